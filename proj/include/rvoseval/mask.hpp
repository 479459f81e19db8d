#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rvoseval {

/// Binary mask stored as bit-packed rows. Bits past the last column of each
/// row are always zero, so whole-word popcounts give exact pixel counts.
class DenseMask {
 public:
  DenseMask() = default;
  DenseMask(int height, int width);

  /// Builds a mask from a row-major byte grid; any nonzero byte is foreground.
  static DenseMask from_pixels(int height, int width, std::span<const std::uint8_t> pixels);

  int height() const { return height_; }
  int width() const { return width_; }
  int words_per_row() const { return words_per_row_; }

  bool get(int row, int col) const;
  void set(int row, int col, bool value = true);

  std::span<const std::uint64_t> row(int r) const;
  std::span<std::uint64_t> row(int r);

  /// The l0 count: number of foreground pixels.
  std::int64_t count() const;
  bool any() const;

  std::vector<std::uint8_t> to_pixels() const;

  bool same_shape(const DenseMask& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const DenseMask&, const DenseMask&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Column-major run-length mask. Runs alternate background/foreground and
/// always start with a (possibly empty) background run.
struct RleMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint32_t> counts;

  /// Throws MalformedRle unless the counts tile the frame canonically.
  void validate() const;

  /// Valid masks only: a canonical RLE has foreground iff it has a second run.
  bool has_foreground() const { return counts.size() > 1; }

  std::int64_t foreground_count() const;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

/// Inner 4-connected contour of a mask; the frame border counts as background.
class BoundaryMask {
 public:
  explicit BoundaryMask(DenseMask pixels) : pixels_(std::move(pixels)) {}
  const DenseMask& pixels() const { return pixels_; }
  std::int64_t count() const { return pixels_.count(); }
  bool empty() const { return !pixels_.any(); }

 private:
  DenseMask pixels_;
};

RleMask rle_encode(const DenseMask& mask);
DenseMask rle_decode(const RleMask& rle);

/// |a ∩ b| / |a ∪ b|, with both-empty scored as kBothEmptyIou.
double region_iou(const DenseMask& a, const DenseMask& b);

/// Score given to a frame where prediction and ground truth are both empty.
inline constexpr double kBothEmptyIou = 1.0;

bool presence(const DenseMask& mask);

BoundaryMask extract_boundary(const DenseMask& mask);

/// Set of pixels within Chebyshev distance `radius` of some foreground pixel.
DenseMask dilate_chebyshev(const DenseMask& mask, int radius);

std::int64_t intersection_count(const DenseMask& a, const DenseMask& b);
std::int64_t union_count(const DenseMask& a, const DenseMask& b);

}  // namespace rvoseval
