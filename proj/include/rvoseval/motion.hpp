#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rvoseval {

/// Interleaved 8-bit RGB frame.
struct RgbFrame {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;
};

/// 8-bit luma plane, row-major.
struct LumaFrame {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> samples;

  LumaFrame() = default;
  LumaFrame(int h, int w, std::uint8_t fill = 0);
  LumaFrame(int h, int w, std::vector<std::uint8_t> s);

  std::uint8_t at(int r, int c) const { return samples[static_cast<std::size_t>(r) * width + c]; }
  std::uint8_t& at(int r, int c) { return samples[static_cast<std::size_t>(r) * width + c]; }

  friend bool operator==(const LumaFrame&, const LumaFrame&) = default;
};

/// BT.601 integer luma, rounded half up.
std::uint8_t bt601_luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);
LumaFrame to_luma(const RgbFrame& rgb);

/// Pads right/bottom edges to a multiple of `block` by replicating the last
/// row/column.
LumaFrame pad_to_block(const LumaFrame& frame, int block);

/// (row, col) displacement in pixels: the block at p in the current frame
/// best matches the block at p - (i, j) in the previous frame.
struct MotionVector {
  int i = 0;
  int j = 0;
  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

struct MotionSearchParams {
  int block = 16;
  int search_radius = 8;
};

struct MotionVectorField {
  int rows = 0;
  int cols = 0;
  int block = 16;
  int search_radius = 8;
  int height = 0;  // original, unpadded
  int width = 0;
  std::vector<MotionVector> vectors;  // row-major over macroblocks

  const MotionVector& at(int r, int c) const {
    return vectors[static_cast<std::size_t>(r) * cols + c];
  }

  friend bool operator==(const MotionVectorField&, const MotionVectorField&) = default;
};

/// Exhaustive SAD block matching of `cur` against `prev`. Candidates whose
/// reference block leaves the padded previous frame are skipped. Ties go to
/// the smallest |i|+|j|, then the lexicographically smallest (i, j).
MotionVectorField estimate_motion(const LumaFrame& cur, const LumaFrame& prev,
                                  const MotionSearchParams& params = {});

/// Longest clip: one keyframe plus up to eleven motion-described frames.
inline constexpr int kMaxClipLength = 12;

struct ClipDecomposition {
  int keyframe_index = 0;
  std::vector<MotionVectorField> motion_fields;

  friend bool operator==(const ClipDecomposition&, const ClipDecomposition&) = default;
};

/// Splits a video into clips of `gop` frames starting at multiples of `gop`.
/// Each non-key frame gets the field estimated against its predecessor.
std::vector<ClipDecomposition> decompose(std::span<const LumaFrame> frames,
                                         int gop = kMaxClipLength,
                                         const MotionSearchParams& params = {}, int threads = 1);

}  // namespace rvoseval
