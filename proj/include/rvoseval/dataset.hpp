#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvoseval/metrics.hpp"

namespace rvoseval {

inline constexpr int kManifestSchemaVersion = 1;

enum class ExpressionType { Static, Dynamic, Hybrid };

std::string_view to_string(ExpressionType t);
std::optional<ExpressionType> parse_expression_type(std::string_view s);

struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct ObjectRecord {
  std::string id;
  std::string category;
  MaskSequence masks;
  std::map<int, Box> boxes;
  nlohmann::json manual_attributes = nlohmann::json::object();
};

struct ExpressionRecord {
  std::string id;
  std::string object_id;
  std::string text;
  ExpressionType type = ExpressionType::Static;
};

struct VideoRecord {
  std::string id;
  double fps = 0.0;
  int num_frames = 0;
  int width = 0;
  int height = 0;
  std::string source_tag;
  std::string split;  // empty when unassigned
  std::vector<ObjectRecord> objects;
  std::vector<ExpressionRecord> expressions;

  double duration_s() const { return num_frames / fps; }
  const ObjectRecord* find_object(std::string_view object_id) const;
};

struct DatasetIndex {
  int schema_version = kManifestSchemaVersion;
  std::vector<VideoRecord> videos;
};

/// One schema defect, located by a JSON pointer into the manifest.
struct Violation {
  std::string pointer;
  std::string message;
};

/// Every schema and referential defect in a parsed manifest document.
std::vector<Violation> validate_manifest(const nlohmann::json& doc);

/// Validates then builds the index; throws SchemaViolation listing all defects.
DatasetIndex parse_manifest(const nlohmann::json& doc);

/// Throws ParseError for unreadable or syntactically invalid JSON.
nlohmann::json read_json_file(const std::filesystem::path& path);

DatasetIndex load_manifest(const std::filesystem::path& path);

// ---- selection criteria -------------------------------------------------

enum class CriterionViolation { DurationTooShort, TooFewObjects, NoDiscontinuousObject };

std::string_view to_string(CriterionViolation v);

struct SelectionRules {
  double min_duration_s = 20.0;  // strict: duration must exceed this
  int min_objects = 2;
};

std::vector<CriterionViolation> check_selection_criteria(const VideoRecord& video,
                                                         const SelectionRules& rules = {});

// ---- per-object measures ------------------------------------------------

/// Fraction of frames where the object's ground-truth mask is empty.
double occlusion_rate(const ObjectRecord& obj, int num_frames);

/// Occlusion brackets with the boundary values 0.25 and 0.75 assigned to the
/// closed outer brackets.
enum class OcclusionBracket { Low, MidLow, MidHigh, High };
inline constexpr int kOcclusionBracketCount = 4;
OcclusionBracket occlusion_bracket(double rate);
std::string_view bracket_label(OcclusionBracket b);

struct AttributeTags {
  std::optional<bool> poc;
  std::optional<bool> foc;
  std::optional<bool> ov;
  std::optional<bool> lra;
  std::optional<bool> vc;
  std::optional<bool> arc;
  std::optional<bool> sv;
  std::optional<bool> cm;
  std::optional<bool> mb;

  friend bool operator==(const AttributeTags&, const AttributeTags&) = default;
};

/// Attribute names in display order.
std::span<const std::string_view> attribute_names();
std::optional<bool> attribute_value(const AttributeTags& tags, std::string_view name);

struct AttributeRules {
  int reappearance_gap = 100;  // LRA: absent frames before the object returns
  double ratio_low = 0.5;      // ARC/SV: acceptable ratio range, inclusive
  double ratio_high = 2.0;
  bool box_tags = true;        // compute ARC/SV (requires boxes)
};

/// Rule-derived tags (FOC, OV, LRA from masks; ARC, SV from boxes) plus the
/// perception tags copied from `manual`.
AttributeTags tag_attributes(const ObjectRecord& obj, const VideoRecord& video,
                             const AttributeTags& manual, const AttributeRules& rules = {});

/// Reads manual labels stored with the object in the manifest.
AttributeTags manual_tags(const ObjectRecord& obj);

// ---- text buckets -------------------------------------------------------

enum class EventComplexity { Single, Two, Multi };
std::string_view to_string(EventComplexity e);

std::span<const std::string> default_event_keywords();

/// Case-insensitive whole-word keyword count: 0 -> Single, 1 -> Two, more -> Multi.
EventComplexity event_complexity(std::string_view text,
                                 std::span<const std::string> keywords = default_event_keywords());

enum class LengthBucket { Short, Mid, Long };
std::string_view to_string(LengthBucket b);
std::string_view bucket_label(LengthBucket b);

/// Number of whitespace-separated tokens (Unicode whitespace aware).
std::size_t token_count(std::string_view text);
LengthBucket length_bucket(std::string_view text);

// ---- statistics ---------------------------------------------------------

struct Histogram {
  double bin_width = 0.0;
  std::vector<std::int64_t> counts;  // bin k covers [k*w, (k+1)*w)

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct StatsOptions {
  double duration_bin_s = 10.0;
};

struct DatasetStats {
  std::int64_t num_videos = 0;
  std::int64_t num_objects = 0;
  std::int64_t num_expressions = 0;
  std::int64_t num_masks = 0;  // non-empty object frames
  std::int64_t num_categories = 0;
  std::int64_t total_frames = 0;
  double total_duration_s = 0.0;
  double mean_duration_s = 0.0;
  double mean_frames = 0.0;
  std::map<std::string, std::int64_t> type_counts;
  std::map<std::string, double> type_percent;
  std::map<std::string, std::int64_t> split_videos;
  std::map<std::string, std::int64_t> split_expressions;
  Histogram video_duration;
  Histogram object_duration;
  std::map<std::int64_t, std::int64_t> objects_per_video;
  std::map<std::int64_t, std::int64_t> descriptions_per_object;
  std::map<std::string, std::int64_t> attribute_videos;  // videos with >= 1 tagged object

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats compute_statistics(const DatasetIndex& index, const StatsOptions& options = {});

nlohmann::json stats_to_json(const DatasetStats& stats);
DatasetStats stats_from_json(const nlohmann::json& j);

}  // namespace rvoseval
