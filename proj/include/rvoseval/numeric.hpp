#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace rvoseval {

// Neumaier-compensated accumulator. Callers feed values in a fixed order so
// totals are reproducible regardless of how the inputs were produced.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    ++n_;
  }

  double total() const { return sum_ + comp_; }
  std::size_t size() const { return n_; }
  double mean() const { return n_ == 0 ? 0.0 : total() / static_cast<double>(n_); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  std::size_t n_ = 0;
};

/// Compensated total of the values taken in ascending order, so the result
/// does not depend on the order they were produced in.
inline double order_free_total(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.total();
}

}  // namespace rvoseval
