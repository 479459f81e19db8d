#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain byte grids and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rvoseval/mask.hpp"
#include "rvoseval/metrics.hpp"
#include "rvoseval/motion.hpp"

namespace oracle {

struct Grid {
  int h = 0;
  int w = 0;
  std::vector<std::uint8_t> px;  // row-major, 0/1

  Grid() = default;
  Grid(int h_, int w_) : h(h_), w(w_), px(static_cast<std::size_t>(h_) * w_, 0) {}
  std::uint8_t at(int r, int c) const { return px[static_cast<std::size_t>(r) * w + c]; }
  std::uint8_t& at(int r, int c) { return px[static_cast<std::size_t>(r) * w + c]; }
  bool any() const { return std::any_of(px.begin(), px.end(), [](auto v) { return v != 0; }); }
};

inline rvoseval::DenseMask to_dense(const Grid& g) {
  return rvoseval::DenseMask::from_pixels(g.h, g.w, g.px);
}

inline Grid from_dense(const rvoseval::DenseMask& m) {
  Grid g(m.height(), m.width());
  for (int r = 0; r < g.h; ++r)
    for (int c = 0; c < g.w; ++c) g.at(r, c) = m.get(r, c) ? 1 : 0;
  return g;
}

inline std::vector<std::uint32_t> rle_counts(const Grid& g) {
  std::vector<std::uint32_t> counts;
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  for (int c = 0; c < g.w; ++c) {
    for (int r = 0; r < g.h; ++r) {
      if (g.at(r, c) != current) {
        counts.push_back(run);
        run = 0;
        current = g.at(r, c);
      }
      ++run;
    }
  }
  counts.push_back(run);
  return counts;
}

inline double iou(const Grid& a, const Grid& b) {
  long inter = 0, uni = 0;
  for (std::size_t k = 0; k < a.px.size(); ++k) {
    inter += (a.px[k] && b.px[k]) ? 1 : 0;
    uni += (a.px[k] || b.px[k]) ? 1 : 0;
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline Grid boundary(const Grid& g) {
  Grid out(g.h, g.w);
  auto fg = [&](int r, int c) { return r >= 0 && r < g.h && c >= 0 && c < g.w && g.at(r, c); };
  for (int r = 0; r < g.h; ++r)
    for (int c = 0; c < g.w; ++c)
      if (g.at(r, c) &&
          !(fg(r - 1, c) && fg(r + 1, c) && fg(r, c - 1) && fg(r, c + 1)))
        out.at(r, c) = 1;
  return out;
}

inline std::vector<std::pair<int, int>> points(const Grid& g) {
  std::vector<std::pair<int, int>> pts;
  for (int r = 0; r < g.h; ++r)
    for (int c = 0; c < g.w; ++c)
      if (g.at(r, c)) pts.emplace_back(r, c);
  return pts;
}

inline double contour_f(const Grid& pred, const Grid& gt, int tol) {
  const auto pb = points(boundary(pred));
  const auto gb = points(boundary(gt));
  if (pb.empty() && gb.empty()) return 1.0;
  if (pb.empty() || gb.empty()) return 0.0;
  auto matched = [tol](const auto& from, const auto& to) {
    long hits = 0;
    for (auto [r, c] : from) {
      for (auto [r2, c2] : to) {
        if (std::max(std::abs(r - r2), std::abs(c - c2)) <= tol) {
          ++hits;
          break;
        }
      }
    }
    return static_cast<double>(hits) / static_cast<double>(from.size());
  };
  const double p = matched(pb, gb);
  const double rc = matched(gb, pb);
  return p + rc == 0.0 ? 0.0 : 2.0 * p * rc / (p + rc);
}

inline int tolerance(int h, int w, double th = 0.008) {
  if (th >= 1.0) return static_cast<int>(std::lround(th));
  return static_cast<int>(std::ceil(th * std::sqrt(double(h) * h + double(w) * w)));
}

struct Scores {
  double j = 0, f = 0, jf = 0, tiou = 0, viou = 0;
};

inline Scores evaluate(const std::vector<Grid>& pred, const std::vector<Grid>& gt,
                       double th = 0.008) {
  Scores s;
  const int tol = tolerance(gt.front().h, gt.front().w, th);
  std::set<int> tp, tg;
  long double js = 0, fs = 0;
  for (std::size_t t = 0; t < gt.size(); ++t) {
    if (pred[t].any()) tp.insert(int(t));
    if (gt[t].any()) tg.insert(int(t));
    js += iou(pred[t], gt[t]);
    fs += contour_f(pred[t], gt[t], tol);
  }
  s.j = double(js / gt.size());
  s.f = double(fs / gt.size());
  s.jf = (s.j + s.f) / 2;
  std::set<int> ti, tu;
  std::set_intersection(tp.begin(), tp.end(), tg.begin(), tg.end(), std::inserter(ti, ti.end()));
  std::set_union(tp.begin(), tp.end(), tg.begin(), tg.end(), std::inserter(tu, tu.end()));
  if (tu.empty()) {
    s.tiou = s.viou = 1.0;
  } else {
    long double v = 0;
    for (int t : ti) v += iou(pred[std::size_t(t)], gt[std::size_t(t)]);
    s.tiou = double(ti.size()) / double(tu.size());
    s.viou = double(v / tu.size());
  }
  return s;
}

// ---- random masks ----------------------------------------------------------

inline Grid random_noise(std::mt19937_64& rng, int h, int w, double density) {
  Grid g(h, w);
  std::bernoulli_distribution bit(density);
  for (auto& v : g.px) v = bit(rng) ? 1 : 0;
  return g;
}

/// Union of a few random rectangles and discs: shapes with real boundaries.
inline Grid random_blobs(std::mt19937_64& rng, int h, int w, int count) {
  Grid g(h, w);
  std::uniform_int_distribution<int> rr(0, h - 1), cc(0, w - 1);
  std::uniform_int_distribution<int> kind(0, 1);
  for (int k = 0; k < count; ++k) {
    const int r0 = rr(rng), c0 = cc(rng);
    const int ext = std::max(1, std::min(h, w) / 3);
    std::uniform_int_distribution<int> size(1, ext);
    const int a = size(rng), b = size(rng);
    if (kind(rng) == 0) {
      for (int r = r0; r < std::min(h, r0 + a); ++r)
        for (int c = c0; c < std::min(w, c0 + b); ++c) g.at(r, c) = 1;
    } else {
      for (int r = std::max(0, r0 - a); r < std::min(h, r0 + a + 1); ++r)
        for (int c = std::max(0, c0 - a); c < std::min(w, c0 + a + 1); ++c)
          if ((r - r0) * (r - r0) + (c - c0) * (c - c0) <= a * a) g.at(r, c) = 1;
    }
  }
  return g;
}

/// A random mask sequence with some frames empty.
inline std::vector<Grid> random_sequence(std::mt19937_64& rng, int frames, int h, int w,
                                         double presence) {
  std::vector<Grid> seq;
  std::bernoulli_distribution present(presence);
  std::uniform_int_distribution<int> count(1, 3);
  for (int t = 0; t < frames; ++t)
    seq.push_back(present(rng) ? random_blobs(rng, h, w, count(rng)) : Grid(h, w));
  return seq;
}

inline rvoseval::MaskSequence to_sequence(const std::vector<Grid>& seq,
                                          const std::string& video = "v",
                                          const std::string& subject = "s") {
  std::vector<rvoseval::DenseMask> frames;
  for (const auto& g : seq) frames.push_back(to_dense(g));
  return rvoseval::MaskSequence::from_dense(video, subject, frames);
}

// ---- motion ----------------------------------------------------------------

inline std::uint8_t padded_at(const rvoseval::LumaFrame& f, int r, int c) {
  return f.at(std::clamp(r, 0, f.height - 1), std::clamp(c, 0, f.width - 1));
}

/// Exhaustive search over every candidate with the documented tie-break.
inline std::vector<rvoseval::MotionVector> motion(const rvoseval::LumaFrame& cur,
                                                  const rvoseval::LumaFrame& prev, int block,
                                                  int radius) {
  const int rows = (cur.height + block - 1) / block;
  const int cols = (cur.width + block - 1) / block;
  const int hp = rows * block, wp = cols * block;
  std::vector<rvoseval::MotionVector> out;
  for (int br = 0; br < rows; ++br) {
    for (int bc = 0; bc < cols; ++bc) {
      const int y = br * block, x = bc * block;
      long best = std::numeric_limits<long>::max();
      std::tuple<int, int, int> best_key{};
      rvoseval::MotionVector best_v{};
      for (int i = -radius; i <= radius; ++i) {
        for (int j = -radius; j <= radius; ++j) {
          const int ry = y - i, rx = x - j;
          if (ry < 0 || rx < 0 || ry + block > hp || rx + block > wp) continue;
          long sad = 0;
          for (int r = 0; r < block; ++r)
            for (int c = 0; c < block; ++c)
              sad += std::abs(int(padded_at(cur, y + r, x + c)) -
                              int(padded_at(prev, ry + r, rx + c)));
          const std::tuple<int, int, int> key{std::abs(i) + std::abs(j), i, j};
          if (sad < best || (sad == best && key < best_key)) {
            best = sad;
            best_key = key;
            best_v = {i, j};
          }
        }
      }
      out.push_back(best_v);
    }
  }
  return out;
}

inline rvoseval::LumaFrame random_luma(std::mt19937_64& rng, int h, int w) {
  rvoseval::LumaFrame f(h, w);
  std::uniform_int_distribution<int> v(0, 255);
  for (auto& s : f.samples) s = static_cast<std::uint8_t>(v(rng));
  return f;
}

/// Smooth textured frame: distinct enough everywhere that translations are
/// recovered uniquely.
inline rvoseval::LumaFrame textured_luma(std::mt19937_64& rng, int h, int w) {
  rvoseval::LumaFrame noise = random_luma(rng, h, w);
  rvoseval::LumaFrame f(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      int s = 0;
      for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc) s += padded_at(noise, r + dr, c + dc);
      f.at(r, c) = static_cast<std::uint8_t>(s / 4);
    }
  return f;
}

/// Frame whose content at p equals src at p - (di, dj), edges replicated.
inline rvoseval::LumaFrame translate(const rvoseval::LumaFrame& src, int di, int dj) {
  rvoseval::LumaFrame out(src.height, src.width);
  for (int r = 0; r < src.height; ++r)
    for (int c = 0; c < src.width; ++c) out.at(r, c) = padded_at(src, r - di, c - dj);
  return out;
}

}  // namespace oracle
