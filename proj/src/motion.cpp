#include "rvoseval/motion.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include "rvoseval/errors.hpp"
#include "rvoseval/parallel.hpp"

namespace rvoseval {

LumaFrame::LumaFrame(int h, int w, std::uint8_t fill)
    : height(h), width(w), samples(static_cast<std::size_t>(h) * w, fill) {}

LumaFrame::LumaFrame(int h, int w, std::vector<std::uint8_t> s)
    : height(h), width(w), samples(std::move(s)) {
  if (samples.size() != static_cast<std::size_t>(h) * w) {
    throw ShapeMismatch("luma buffer does not match frame dimensions");
  }
}

std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  // Coefficients scaled by 1000; +500 rounds half up.
  return static_cast<std::uint8_t>((299U * r + 587U * g + 114U * b + 500U) / 1000U);
}

LumaFrame to_luma(const RgbFrame& rgb) {
  if (rgb.data.size() != static_cast<std::size_t>(rgb.height) * rgb.width * 3) {
    throw ShapeMismatch("RGB buffer does not match frame dimensions");
  }
  LumaFrame out(rgb.height, rgb.width);
  for (std::size_t p = 0; p < out.samples.size(); ++p) {
    out.samples[p] = bt601_luma(rgb.data[3 * p], rgb.data[3 * p + 1], rgb.data[3 * p + 2]);
  }
  return out;
}

LumaFrame pad_to_block(const LumaFrame& frame, int block) {
  if (block <= 0) throw InvalidArgument("block size must be positive");
  if (frame.height <= 0 || frame.width <= 0) throw InvalidArgument("empty frame");
  const int ph = (frame.height + block - 1) / block * block;
  const int pw = (frame.width + block - 1) / block * block;
  if (ph == frame.height && pw == frame.width) return frame;
  LumaFrame out(ph, pw);
  for (int r = 0; r < ph; ++r) {
    const int sr = std::min(r, frame.height - 1);
    for (int c = 0; c < pw; ++c) out.at(r, c) = frame.at(sr, std::min(c, frame.width - 1));
  }
  return out;
}

namespace {

std::vector<MotionVector> ordered_candidates(int radius) {
  std::vector<MotionVector> cands;
  cands.reserve(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1));
  for (int i = -radius; i <= radius; ++i) {
    for (int j = -radius; j <= radius; ++j) cands.push_back({i, j});
  }
  std::sort(cands.begin(), cands.end(), [](const MotionVector& a, const MotionVector& b) {
    const int da = std::abs(a.i) + std::abs(a.j);
    const int db = std::abs(b.i) + std::abs(b.j);
    if (da != db) return da < db;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return cands;
}

// Candidates arrive in tie-break order, so only a strictly lower cost may
// replace the incumbent and any partial sum reaching it can be abandoned.
MotionVector search_block_generic(const LumaFrame& cur, const LumaFrame& prev, int y0, int x0,
                                  int block, const std::vector<MotionVector>& cands) {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  MotionVector best_mv{};
  for (const auto& mv : cands) {
    const int ry = y0 - mv.i;
    const int rx = x0 - mv.j;
    if (ry < 0 || rx < 0 || ry > prev.height - block || rx > prev.width - block) continue;
    std::uint32_t cost = 0;
    for (int r = 0; r < block && cost < best; ++r) {
      const std::uint8_t* a = &cur.samples[static_cast<std::size_t>(y0 + r) * cur.width + x0];
      const std::uint8_t* b = &prev.samples[static_cast<std::size_t>(ry + r) * prev.width + rx];
      for (int c = 0; c < block; ++c) cost += static_cast<std::uint32_t>(std::abs(a[c] - b[c]));
    }
    if (cost < best) {
      best = cost;
      best_mv = mv;
      if (best == 0) break;
    }
  }
  return best_mv;
}

#if defined(__SSE2__)
MotionVector search_block_16(const LumaFrame& cur, const LumaFrame& prev, int y0, int x0,
                             const std::vector<MotionVector>& cands) {
  constexpr int kBlock = 16;
  __m128i rows[kBlock];
  for (int r = 0; r < kBlock; ++r) {
    rows[r] = _mm_loadu_si128(reinterpret_cast<const __m128i*>(
        &cur.samples[static_cast<std::size_t>(y0 + r) * cur.width + x0]));
  }
  const std::size_t stride = static_cast<std::size_t>(prev.width);
  auto horizontal = [](__m128i acc) {
    return static_cast<std::uint32_t>(_mm_cvtsi128_si32(acc)) +
           static_cast<std::uint32_t>(_mm_cvtsi128_si32(_mm_srli_si128(acc, 8)));
  };

  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  MotionVector best_mv{};
  for (const auto& mv : cands) {
    const int ry = y0 - mv.i;
    const int rx = x0 - mv.j;
    if (ry < 0 || rx < 0 || ry > prev.height - kBlock || rx > prev.width - kBlock) continue;
    const std::uint8_t* ref = &prev.samples[static_cast<std::size_t>(ry) * stride + rx];
    __m128i acc = _mm_setzero_si128();
    for (int r = 0; r < 8; ++r) {
      const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ref + r * stride));
      acc = _mm_add_epi64(acc, _mm_sad_epu8(rows[r], b));
    }
    if (horizontal(acc) >= best) continue;
    for (int r = 8; r < kBlock; ++r) {
      const __m128i b = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ref + r * stride));
      acc = _mm_add_epi64(acc, _mm_sad_epu8(rows[r], b));
    }
    const std::uint32_t cost = horizontal(acc);
    if (cost < best) {
      best = cost;
      best_mv = mv;
      if (best == 0) break;
    }
  }
  return best_mv;
}
#endif

}  // namespace

MotionVectorField estimate_motion(const LumaFrame& cur, const LumaFrame& prev,
                                  const MotionSearchParams& params) {
  if (cur.height != prev.height || cur.width != prev.width) {
    throw ShapeMismatch("frame shapes differ: " + std::to_string(cur.height) + "x" +
                        std::to_string(cur.width) + " vs " + std::to_string(prev.height) + "x" +
                        std::to_string(prev.width));
  }
  if (params.block <= 0) throw InvalidArgument("block size must be positive");
  if (params.search_radius < 0) throw InvalidArgument("search radius must be non-negative");

  const LumaFrame pc = pad_to_block(cur, params.block);
  const LumaFrame pp = pad_to_block(prev, params.block);
  MotionVectorField field;
  field.block = params.block;
  field.search_radius = params.search_radius;
  field.height = cur.height;
  field.width = cur.width;
  field.rows = pc.height / params.block;
  field.cols = pc.width / params.block;
  field.vectors.resize(static_cast<std::size_t>(field.rows) * field.cols);

  const auto cands = ordered_candidates(params.search_radius);
  for (int br = 0; br < field.rows; ++br) {
    for (int bc = 0; bc < field.cols; ++bc) {
      const int y0 = br * params.block;
      const int x0 = bc * params.block;
      MotionVector mv;
#if defined(__SSE2__)
      if (params.block == 16) {
        mv = search_block_16(pc, pp, y0, x0, cands);
      } else {
        mv = search_block_generic(pc, pp, y0, x0, params.block, cands);
      }
#else
      mv = search_block_generic(pc, pp, y0, x0, params.block, cands);
#endif
      field.vectors[static_cast<std::size_t>(br) * field.cols + bc] = mv;
    }
  }
  return field;
}

std::vector<ClipDecomposition> decompose(std::span<const LumaFrame> frames, int gop,
                                         const MotionSearchParams& params, int threads) {
  if (frames.empty()) throw EmptyVideo("cannot decompose a video with no frames");
  if (gop < 1 || gop > kMaxClipLength) {
    throw InvalidArgument("gop must be in [1, " + std::to_string(kMaxClipLength) + "]");
  }
  for (const auto& f : frames) {
    if (f.height != frames.front().height || f.width != frames.front().width) {
      throw ShapeMismatch("video frames have inconsistent dimensions");
    }
  }

  // Field for frame t (t not a keyframe) lands at slot t.
  std::vector<MotionVectorField> fields(frames.size());
  std::vector<std::size_t> targets;
  for (std::size_t t = 1; t < frames.size(); ++t) {
    if (t % static_cast<std::size_t>(gop) != 0) targets.push_back(t);
  }
  parallel_for(targets.size(), threads, [&](std::size_t k) {
    const auto t = targets[k];
    fields[t] = estimate_motion(frames[t], frames[t - 1], params);
  });

  std::vector<ClipDecomposition> clips;
  for (std::size_t key = 0; key < frames.size(); key += static_cast<std::size_t>(gop)) {
    ClipDecomposition clip;
    clip.keyframe_index = static_cast<int>(key);
    const auto end = std::min(frames.size(), key + static_cast<std::size_t>(gop));
    for (auto t = key + 1; t < end; ++t) clip.motion_fields.push_back(std::move(fields[t]));
    clips.push_back(std::move(clip));
  }
  return clips;
}

}  // namespace rvoseval
