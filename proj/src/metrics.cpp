#include "rvoseval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "rvoseval/errors.hpp"
#include "rvoseval/numeric.hpp"

namespace rvoseval {

MaskSequence::MaskSequence(std::string video_id, std::string subject_id, int num_frames,
                           int height, int width, std::map<int, RleMask> frames)
    : video_id_(std::move(video_id)),
      subject_id_(std::move(subject_id)),
      num_frames_(num_frames),
      height_(height),
      width_(width),
      frames_(std::move(frames)) {
  if (num_frames_ < 0) throw InvalidArgument("num_frames must be non-negative");
  present_.assign(static_cast<std::size_t>(num_frames_), 0);
  for (const auto& [t, rle] : frames_) {
    if (t < 0 || t >= num_frames_) {
      throw SequenceMismatch("frame index " + std::to_string(t) + " outside [0, " +
                             std::to_string(num_frames_) + ") in " + video_id_ + "/" +
                             subject_id_);
    }
    if (rle.height != height_ || rle.width != width_) {
      throw ShapeMismatch("frame " + std::to_string(t) + " of " + video_id_ + "/" + subject_id_ +
                          " is " + std::to_string(rle.height) + "x" + std::to_string(rle.width) +
                          ", expected " + std::to_string(height_) + "x" +
                          std::to_string(width_));
    }
    rle.validate();
    if (rle.has_foreground()) {
      present_[static_cast<std::size_t>(t)] = 1;
      presence_set_.push_back(t);
    }
  }
}

MaskSequence MaskSequence::from_dense(std::string video_id, std::string subject_id,
                                      const std::vector<DenseMask>& frames) {
  if (frames.empty()) {
    return MaskSequence(std::move(video_id), std::move(subject_id), 0, 0, 0, {});
  }
  std::map<int, RleMask> rles;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (!frames[t].same_shape(frames.front())) {
      throw ShapeMismatch("dense frames have inconsistent shapes");
    }
    if (frames[t].any()) rles.emplace(static_cast<int>(t), rle_encode(frames[t]));
  }
  return MaskSequence(std::move(video_id), std::move(subject_id), static_cast<int>(frames.size()),
                      frames.front().height(), frames.front().width(), std::move(rles));
}

DenseMask MaskSequence::dense_frame(int t) const {
  auto it = frames_.find(t);
  if (it == frames_.end()) return DenseMask(height_, width_);
  return rle_decode(it->second);
}

int ToleranceRule::pixels(int height, int width) const {
  if (boundary_th >= 1.0) return static_cast<int>(std::lround(boundary_th));
  const double diag = std::sqrt(static_cast<double>(height) * height +
                                static_cast<double>(width) * width);
  return static_cast<int>(std::ceil(boundary_th * diag));
}

namespace {

void require_aligned(const MaskSequence& pred, const MaskSequence& gt) {
  if (pred.video_id() != gt.video_id()) {
    throw SequenceMismatch("video ids differ: '" + pred.video_id() + "' vs '" + gt.video_id() +
                           "'");
  }
  if (pred.num_frames() != gt.num_frames()) {
    throw SequenceMismatch("sequence lengths differ: " + std::to_string(pred.num_frames()) +
                           " vs " + std::to_string(gt.num_frames()));
  }
}

void require_same_frame_shape(const MaskSequence& pred, const MaskSequence& gt) {
  // Shapes only matter once both sides carry a mask on some frame.
  if (pred.presence_set().empty() || gt.presence_set().empty()) return;
  if (pred.height() != gt.height() || pred.width() != gt.width()) {
    throw ShapeMismatch("sequence frame shapes differ");
  }
}

std::size_t intersection_size(const MaskSequence& pred, const MaskSequence& gt) {
  std::size_t n = 0;
  for (int t : gt.presence_set()) n += pred.present(t) ? 1 : 0;
  return n;
}

std::size_t union_size(const MaskSequence& pred, const MaskSequence& gt, std::size_t inter) {
  return pred.presence_set().size() + gt.presence_set().size() - inter;
}

// F on already-extracted boundaries.
double boundary_f(const BoundaryMask& pb, const BoundaryMask& gb, int tolerance_px) {
  const auto np = pb.count();
  const auto ng = gb.count();
  if (np == 0 && ng == 0) return 1.0;
  if (np == 0 || ng == 0) return 0.0;
  const auto gt_zone = dilate_chebyshev(gb.pixels(), tolerance_px);
  const auto pred_zone = dilate_chebyshev(pb.pixels(), tolerance_px);
  const double precision =
      static_cast<double>(intersection_count(pb.pixels(), gt_zone)) / static_cast<double>(np);
  const double recall =
      static_cast<double>(intersection_count(gb.pixels(), pred_zone)) / static_cast<double>(ng);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

PresenceSets presence_sets(const MaskSequence& pred, const MaskSequence& gt) {
  require_aligned(pred, gt);
  PresenceSets s;
  s.t_pred = pred.presence_set();
  s.t_gt = gt.presence_set();
  std::set_intersection(s.t_pred.begin(), s.t_pred.end(), s.t_gt.begin(), s.t_gt.end(),
                        std::back_inserter(s.t_i));
  std::set_union(s.t_pred.begin(), s.t_pred.end(), s.t_gt.begin(), s.t_gt.end(),
                 std::back_inserter(s.t_u));
  return s;
}

double temporal_iou(const MaskSequence& pred, const MaskSequence& gt) {
  require_aligned(pred, gt);
  const auto inter = intersection_size(pred, gt);
  const auto uni = union_size(pred, gt, inter);
  if (uni == 0) return kEmptyUnionScore;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double volume_iou(const MaskSequence& pred, const MaskSequence& gt) {
  require_aligned(pred, gt);
  require_same_frame_shape(pred, gt);
  const auto inter = intersection_size(pred, gt);
  const auto uni = union_size(pred, gt, inter);
  if (uni == 0) return kEmptyUnionScore;
  std::vector<double> overlaps;
  for (int t : gt.presence_set()) {
    if (pred.present(t)) overlaps.push_back(region_iou(pred.dense_frame(t), gt.dense_frame(t)));
  }
  return order_free_total(std::move(overlaps)) / static_cast<double>(uni);
}

double contour_f(const DenseMask& pred, const DenseMask& gt, int tolerance_px) {
  if (!pred.same_shape(gt)) throw ShapeMismatch("mask shapes differ");
  if (tolerance_px < 0) throw InvalidArgument("tolerance must be non-negative");
  return boundary_f(extract_boundary(pred), extract_boundary(gt), tolerance_px);
}

JfScores sequence_jf(const MaskSequence& pred, const MaskSequence& gt,
                     const ToleranceRule& tolerance) {
  const auto m = evaluate_expression(pred, gt, tolerance);
  return {m.j, m.f, m.jf};
}

ExpressionMetrics evaluate_expression(const MaskSequence& pred, const MaskSequence& gt,
                                      const ToleranceRule& tolerance) {
  require_aligned(pred, gt);
  require_same_frame_shape(pred, gt);
  const int frames = gt.num_frames();
  ExpressionMetrics m;
  m.per_frame_j.resize(static_cast<std::size_t>(frames));
  m.per_frame_f.resize(static_cast<std::size_t>(frames));

  const int tol = frames > 0 && gt.height() > 0 ? tolerance.pixels(gt.height(), gt.width()) : 0;
  std::vector<double> overlaps;
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (int t = 0; t < frames; ++t) {
    const bool p = pred.present(t);
    const bool g = gt.present(t);
    double jt = 0.0;
    double ft = 0.0;
    if (!p && !g) {
      jt = kBothEmptyIou;
      ft = 1.0;
    } else if (p && g) {
      const auto pm = pred.dense_frame(t);
      const auto gm = gt.dense_frame(t);
      jt = region_iou(pm, gm);
      ft = boundary_f(extract_boundary(pm), extract_boundary(gm), tol);
      overlaps.push_back(jt);
      ++inter;
    }
    if (p || g) ++uni;
    m.per_frame_j[static_cast<std::size_t>(t)] = jt;
    m.per_frame_f[static_cast<std::size_t>(t)] = ft;
  }

  m.j = frames == 0 ? kBothEmptyIou : order_free_total(m.per_frame_j) / frames;
  m.f = frames == 0 ? 1.0 : order_free_total(m.per_frame_f) / frames;
  m.jf = (m.j + m.f) / 2.0;
  if (uni == 0) {
    m.tiou = kEmptyUnionScore;
    m.viou = kEmptyUnionScore;
  } else {
    m.tiou = static_cast<double>(inter) / static_cast<double>(uni);
    m.viou = order_free_total(std::move(overlaps)) / static_cast<double>(uni);
  }
  return m;
}

}  // namespace rvoseval
