#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvoseval/dataset.hpp"
#include "rvoseval/metrics.hpp"

namespace rvoseval {

enum class BucketKind { Occlusion, Length, Events };
std::string_view to_string(BucketKind k);
std::optional<BucketKind> parse_bucket_kind(std::string_view s);

struct EvalConfig {
  std::string split;         // empty: every video
  int threads = 0;           // 0: default_thread_count()
  bool allow_missing = false;
  bool strict = false;       // abort on the first per-expression error
  double boundary_th = 0.008;
  std::vector<BucketKind> buckets;
  std::vector<std::string> event_keywords;  // empty: default list
  bool include_per_frame = false;
  bool include_timing = false;  // wall time and workers in the JSON output
};

/// Uniform mean of per-expression values.
struct Aggregate {
  std::int64_t count = 0;
  double j = 0.0;
  double f = 0.0;
  double jf = 0.0;
  double tiou = 0.0;
  double viou = 0.0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct ExpressionResult {
  std::string video_id;
  std::string expression_id;
  std::string object_id;
  ExpressionType type = ExpressionType::Static;
  ExpressionMetrics metrics;
  bool prediction_missing = false;
  double occlusion_rate = 0.0;
  OcclusionBracket occlusion = OcclusionBracket::Low;
  LengthBucket length = LengthBucket::Short;
  EventComplexity events = EventComplexity::Single;

  friend bool operator==(const ExpressionResult&, const ExpressionResult&) = default;
};

struct ExpressionError {
  std::string video_id;
  std::string expression_id;
  std::string kind;
  std::string message;

  friend bool operator==(const ExpressionError&, const ExpressionError&) = default;
};

struct BucketTable {
  BucketKind kind = BucketKind::Occlusion;
  std::vector<std::string> labels;
  std::vector<Aggregate> values;

  friend bool operator==(const BucketTable&, const BucketTable&) = default;
};

struct RunMeta {
  std::string split;
  double boundary_th = 0.008;
  bool allow_missing = false;
  bool per_frame = false;
  std::vector<std::string> event_keywords;
  double wall_time_s = 0.0;
  int workers = 1;
  bool timing_recorded = false;

  friend bool operator==(const RunMeta&, const RunMeta&) = default;
};

struct EvalReport {
  std::vector<ExpressionResult> per_expression;  // sorted by (video_id, expression_id)
  std::map<ExpressionType, Aggregate> per_type;
  Aggregate overall;
  std::vector<BucketTable> buckets;
  std::vector<ExpressionError> errors;
  std::vector<std::string> warnings;
  RunMeta run_meta;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// One parsed prediction file.
struct PredictionFile {
  std::string video_id;
  std::string expression_id;
  std::map<int, RleMask> masks;  // null entries dropped
};

/// Parses the prediction JSON form; throws ParseError / MalformedRle.
PredictionFile parse_prediction(const nlohmann::json& j);
nlohmann::json prediction_to_json(const PredictionFile& p);

/// Returns the prediction for (video, expression) or nullopt when absent.
using PredictionLoader =
    std::function<std::optional<PredictionFile>(const VideoRecord&, const ExpressionRecord&)>;

/// Evaluates every expression of the selected split in parallel and reduces
/// in canonical order; output does not depend on the worker count.
EvalReport evaluate(const DatasetIndex& gt, const PredictionLoader& loader,
                    const EvalConfig& config);

/// Maps prediction files under `dir` to (video_id, expression_id).
/// `<dir>/<video_id>/<expression_id>.json` resolves without parsing; any other
/// *.json is opened to read its declared ids.
class PredictionDirectory {
 public:
  PredictionDirectory(const std::filesystem::path& dir, const DatasetIndex& gt);

  std::optional<PredictionFile> load(const std::string& video_id,
                                     const std::string& expression_id) const;
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::map<std::pair<std::string, std::string>, std::filesystem::path> files_;
  std::vector<std::string> warnings_;
};

EvalReport evaluate_run(const DatasetIndex& gt, const std::filesystem::path& predictions_dir,
                        const EvalConfig& config);

/// Recomputes overall/per-type/bucket aggregates from per_expression.
void recompute_aggregates(EvalReport& report, const std::vector<BucketKind>& buckets);

enum class ReportFormat { Table, Csv, Json };
std::optional<ReportFormat> parse_report_format(std::string_view s);

nlohmann::json report_to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);

std::string render_report(const EvalReport& report, ReportFormat format);
std::string render_stats(const DatasetStats& stats, ReportFormat format);

}  // namespace rvoseval
