#pragma once

#include <map>
#include <string>
#include <vector>

#include "rvoseval/mask.hpp"

namespace rvoseval {

/// Frame-indexed masks for one (video, object-or-expression) pair. Frames not
/// in the map are empty. Immutable once built; the presence set is computed
/// at construction.
class MaskSequence {
 public:
  MaskSequence() = default;
  MaskSequence(std::string video_id, std::string subject_id, int num_frames, int height,
               int width, std::map<int, RleMask> frames);

  /// Convenience for tests and bindings: one dense mask per frame.
  static MaskSequence from_dense(std::string video_id, std::string subject_id,
                                 const std::vector<DenseMask>& frames);

  const std::string& video_id() const { return video_id_; }
  const std::string& subject_id() const { return subject_id_; }
  int num_frames() const { return num_frames_; }
  int height() const { return height_; }
  int width() const { return width_; }
  const std::map<int, RleMask>& frames() const { return frames_; }

  bool present(int t) const { return present_[static_cast<std::size_t>(t)] != 0; }
  const std::vector<int>& presence_set() const { return presence_set_; }

  /// Decoded mask for frame t; an all-background mask when absent.
  DenseMask dense_frame(int t) const;

 private:
  std::string video_id_;
  std::string subject_id_;
  int num_frames_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::map<int, RleMask> frames_;
  std::vector<char> present_;
  std::vector<int> presence_set_;
};

struct PresenceSets {
  std::vector<int> t_pred;
  std::vector<int> t_gt;
  std::vector<int> t_i;
  std::vector<int> t_u;
};

/// Boundary tolerance: fractions below 1 scale the image diagonal, values of
/// 1 or more are read as a pixel count.
struct ToleranceRule {
  double boundary_th = 0.008;
  int pixels(int height, int width) const;
};

struct JfScores {
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
};

struct ExpressionMetrics {
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
  double tiou = 0.0;
  double viou = 0.0;
  std::vector<double> per_frame_j;
  std::vector<double> per_frame_f;

  friend bool operator==(const ExpressionMetrics&, const ExpressionMetrics&) = default;
};

/// Score for tIoU/vIoU when neither sequence is ever present.
inline constexpr double kEmptyUnionScore = 1.0;

PresenceSets presence_sets(const MaskSequence& pred, const MaskSequence& gt);

double temporal_iou(const MaskSequence& pred, const MaskSequence& gt);
double volume_iou(const MaskSequence& pred, const MaskSequence& gt);

/// Boundary F-measure: a boundary pixel matches when some boundary pixel of
/// the other mask lies within Chebyshev distance tolerance_px.
double contour_f(const DenseMask& pred, const DenseMask& gt, int tolerance_px);

JfScores sequence_jf(const MaskSequence& pred, const MaskSequence& gt,
                     const ToleranceRule& tolerance = {});

ExpressionMetrics evaluate_expression(const MaskSequence& pred, const MaskSequence& gt,
                                      const ToleranceRule& tolerance = {});

}  // namespace rvoseval
