#include "rvoseval/mask.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "rvoseval/errors.hpp"

namespace rvoseval {

namespace {

constexpr int kWordBits = 64;

std::uint64_t tail_mask(int width) {
  const int rem = width % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

void require_same_shape(const DenseMask& a, const DenseMask& b) {
  if (!a.same_shape(b)) {
    throw ShapeMismatch("mask shapes differ: " + std::to_string(a.height()) + "x" +
                        std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                        std::to_string(b.width()));
  }
}

// out[c] = in[c - 1], bit 0 filled with zero.
void shift_toward_higher(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) {
  std::uint64_t carry = 0;
  for (std::size_t w = 0; w < in.size(); ++w) {
    out[w] = (in[w] << 1) | carry;
    carry = in[w] >> 63;
  }
}

// out[c] = in[c + 1]; relies on zero padding past the last column.
void shift_toward_lower(std::span<const std::uint64_t> in, std::span<std::uint64_t> out) {
  std::uint64_t carry = 0;
  for (std::size_t w = in.size(); w-- > 0;) {
    out[w] = (in[w] >> 1) | carry;
    carry = in[w] << 63;
  }
}

}  // namespace

DenseMask::DenseMask(int height, int width)
    : height_(height), width_(width), words_per_row_((width + kWordBits - 1) / kWordBits) {
  if (height <= 0 || width <= 0) {
    throw InvalidArgument("mask dimensions must be positive");
  }
  words_.assign(static_cast<std::size_t>(height_) * words_per_row_, 0);
}

DenseMask DenseMask::from_pixels(int height, int width, std::span<const std::uint8_t> pixels) {
  DenseMask m(height, width);
  if (pixels.size() != static_cast<std::size_t>(height) * width) {
    throw ShapeMismatch("pixel buffer does not match mask dimensions");
  }
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (pixels[static_cast<std::size_t>(r) * width + c] != 0) m.set(r, c);
    }
  }
  return m;
}

bool DenseMask::get(int r, int c) const {
  const auto w = words_[static_cast<std::size_t>(r) * words_per_row_ + c / kWordBits];
  return (w >> (c % kWordBits)) & 1U;
}

void DenseMask::set(int r, int c, bool value) {
  auto& w = words_[static_cast<std::size_t>(r) * words_per_row_ + c / kWordBits];
  const std::uint64_t bit = std::uint64_t{1} << (c % kWordBits);
  w = value ? (w | bit) : (w & ~bit);
}

std::span<const std::uint64_t> DenseMask::row(int r) const {
  return {words_.data() + static_cast<std::size_t>(r) * words_per_row_,
          static_cast<std::size_t>(words_per_row_)};
}

std::span<std::uint64_t> DenseMask::row(int r) {
  return {words_.data() + static_cast<std::size_t>(r) * words_per_row_,
          static_cast<std::size_t>(words_per_row_)};
}

std::int64_t DenseMask::count() const {
  std::int64_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool DenseMask::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::vector<std::uint8_t> DenseMask::to_pixels() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(height_) * width_, 0);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) out[static_cast<std::size_t>(r) * width_ + c] = get(r, c);
  }
  return out;
}

void RleMask::validate() const {
  if (height <= 0 || width <= 0) throw MalformedRle("RLE dimensions must be positive");
  if (counts.empty()) throw MalformedRle("RLE has no runs");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0 && i != 0) {
      throw MalformedRle("zero-length run at position " + std::to_string(i));
    }
    total += counts[i];
  }
  const auto expected = static_cast<std::uint64_t>(height) * static_cast<std::uint64_t>(width);
  if (total != expected) {
    throw MalformedRle("RLE runs sum to " + std::to_string(total) + ", expected " +
                       std::to_string(expected));
  }
}

std::int64_t RleMask::foreground_count() const {
  std::int64_t n = 0;
  for (std::size_t i = 1; i < counts.size(); i += 2) n += counts[i];
  return n;
}

RleMask rle_encode(const DenseMask& mask) {
  RleMask rle{mask.height(), mask.width(), {}};
  bool current = false;
  std::uint32_t run = 0;
  for (int c = 0; c < mask.width(); ++c) {
    for (int r = 0; r < mask.height(); ++r) {
      const bool v = mask.get(r, c);
      if (v != current) {
        rle.counts.push_back(run);
        run = 0;
        current = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

DenseMask rle_decode(const RleMask& rle) {
  rle.validate();
  DenseMask mask(rle.height, rle.width);
  const auto h = static_cast<std::uint64_t>(rle.height);
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < rle.counts.size(); ++i) {
    const std::uint64_t end = pos + rle.counts[i];
    if (i % 2 == 1) {
      for (std::uint64_t p = pos; p < end; ++p) {
        mask.set(static_cast<int>(p % h), static_cast<int>(p / h));
      }
    }
    pos = end;
  }
  return mask;
}

std::int64_t intersection_count(const DenseMask& a, const DenseMask& b) {
  require_same_shape(a, b);
  std::int64_t n = 0;
  for (int r = 0; r < a.height(); ++r) {
    auto ra = a.row(r);
    auto rb = b.row(r);
    for (std::size_t w = 0; w < ra.size(); ++w) n += std::popcount(ra[w] & rb[w]);
  }
  return n;
}

std::int64_t union_count(const DenseMask& a, const DenseMask& b) {
  require_same_shape(a, b);
  std::int64_t n = 0;
  for (int r = 0; r < a.height(); ++r) {
    auto ra = a.row(r);
    auto rb = b.row(r);
    for (std::size_t w = 0; w < ra.size(); ++w) n += std::popcount(ra[w] | rb[w]);
  }
  return n;
}

double region_iou(const DenseMask& a, const DenseMask& b) {
  require_same_shape(a, b);
  std::int64_t inter = 0;
  std::int64_t uni = 0;
  for (int r = 0; r < a.height(); ++r) {
    auto ra = a.row(r);
    auto rb = b.row(r);
    for (std::size_t w = 0; w < ra.size(); ++w) {
      inter += std::popcount(ra[w] & rb[w]);
      uni += std::popcount(ra[w] | rb[w]);
    }
  }
  if (uni == 0) return kBothEmptyIou;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

bool presence(const DenseMask& mask) { return mask.any(); }

BoundaryMask extract_boundary(const DenseMask& mask) {
  const int h = mask.height();
  const int wpr = mask.words_per_row();
  DenseMask out(h, mask.width());
  if (!mask.any()) return BoundaryMask(std::move(out));

  const std::uint64_t last_word = tail_mask(mask.width());
  std::vector<std::uint64_t> left(wpr);
  std::vector<std::uint64_t> right(wpr);
  for (int r = 0; r < h; ++r) {
    auto cur = mask.row(r);
    shift_toward_higher(cur, left);
    shift_toward_lower(cur, right);
    left[wpr - 1] &= last_word;
    auto dst = out.row(r);
    for (int w = 0; w < wpr; ++w) {
      const std::uint64_t up = r > 0 ? mask.row(r - 1)[w] : 0;
      const std::uint64_t down = r + 1 < h ? mask.row(r + 1)[w] : 0;
      const std::uint64_t interior = cur[w] & left[w] & right[w] & up & down;
      dst[w] = cur[w] & ~interior;
    }
  }
  return BoundaryMask(std::move(out));
}

DenseMask dilate_chebyshev(const DenseMask& mask, int radius) {
  if (radius < 0) throw InvalidArgument("dilation radius must be non-negative");
  if (radius == 0) return mask;
  const int h = mask.height();
  const int wpr = mask.words_per_row();
  const std::uint64_t last_word = tail_mask(mask.width());

  // Horizontal pass: OR of the row shifted by -radius..radius columns.
  DenseMask horiz(h, mask.width());
  std::vector<std::uint64_t> lo(wpr);
  std::vector<std::uint64_t> hi(wpr);
  std::vector<std::uint64_t> tmp(wpr);
  for (int r = 0; r < h; ++r) {
    auto src = mask.row(r);
    auto dst = horiz.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
    std::copy(src.begin(), src.end(), lo.begin());
    std::copy(src.begin(), src.end(), hi.begin());
    for (int k = 0; k < radius; ++k) {
      shift_toward_higher(hi, tmp);
      tmp[wpr - 1] &= last_word;
      hi.swap(tmp);
      shift_toward_lower(lo, tmp);
      lo.swap(tmp);
      for (int w = 0; w < wpr; ++w) dst[w] |= hi[w] | lo[w];
    }
  }

  DenseMask out(h, mask.width());
  for (int r = 0; r < h; ++r) {
    auto dst = out.row(r);
    const int r0 = std::max(0, r - radius);
    const int r1 = std::min(h - 1, r + radius);
    for (int rr = r0; rr <= r1; ++rr) {
      auto src = horiz.row(rr);
      for (int w = 0; w < wpr; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

}  // namespace rvoseval
