#include "rvoseval/report.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "rvoseval/errors.hpp"
#include "rvoseval/json_io.hpp"
#include "rvoseval/numeric.hpp"
#include "rvoseval/parallel.hpp"

namespace rvoseval {

using nlohmann::json;

std::string_view to_string(BucketKind k) {
  switch (k) {
    case BucketKind::Occlusion:
      return "occlusion";
    case BucketKind::Length:
      return "length";
    case BucketKind::Events:
      return "events";
  }
  return "?";
}

std::optional<BucketKind> parse_bucket_kind(std::string_view s) {
  if (s == "occlusion") return BucketKind::Occlusion;
  if (s == "length") return BucketKind::Length;
  if (s == "events") return BucketKind::Events;
  return std::nullopt;
}

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

// ---- prediction files ---------------------------------------------------

PredictionFile parse_prediction(const json& j) {
  if (!j.is_object()) throw ParseError("prediction must be a JSON object");
  PredictionFile p;
  try {
    p.video_id = j.at("video_id").get<std::string>();
    p.expression_id = j.at("expression_id").get<std::string>();
  } catch (const json::exception&) {
    throw ParseError("prediction needs string \"video_id\" and \"expression_id\"");
  }
  auto masks = j.find("masks");
  if (masks == j.end()) return p;
  if (!masks->is_object()) throw ParseError("prediction \"masks\" must be an object");
  for (const auto& [key, value] : masks->items()) {
    const auto frame = parse_frame_key(key);
    if (!frame) throw ParseError("prediction frame key '" + key + "' is not a frame index");
    if (value.is_null()) continue;
    p.masks.emplace(*frame, rle_from_json(value));
  }
  return p;
}

json prediction_to_json(const PredictionFile& p) {
  json masks = json::object();
  for (const auto& [t, rle] : p.masks) masks[std::to_string(t)] = rle_to_json(rle);
  return json{{"video_id", p.video_id}, {"expression_id", p.expression_id}, {"masks", masks}};
}

PredictionDirectory::PredictionDirectory(const std::filesystem::path& dir,
                                         const DatasetIndex& gt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ParseError("prediction directory not found: " + dir.string());
  std::set<std::pair<std::string, std::string>> expected;
  for (const auto& v : gt.videos) {
    for (const auto& e : v.expressions) expected.emplace(v.id, e.id);
  }

  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());

  auto claim = [&](const std::pair<std::string, std::string>& key, const fs::path& path) {
    auto [it, inserted] = files_.emplace(key, path);
    if (!inserted) {
      warnings_.push_back("duplicate prediction for " + key.first + "/" + key.second + ": " +
                          path.string() + " ignored in favour of " + it->second.string());
    }
  };

  std::vector<fs::path> unresolved;
  for (const auto& path : paths) {
    if (path.parent_path() != dir) {
      std::pair<std::string, std::string> key{path.parent_path().filename().string(),
                                              path.stem().string()};
      if (expected.contains(key)) {
        claim(key, path);
        continue;
      }
    }
    unresolved.push_back(path);
  }
  for (const auto& path : unresolved) {
    try {
      const auto j = read_json_file(path);
      std::pair<std::string, std::string> key{j.at("video_id").get<std::string>(),
                                              j.at("expression_id").get<std::string>()};
      if (expected.contains(key)) {
        claim(key, path);
      } else {
        warnings_.push_back("prediction for unknown expression " + key.first + "/" + key.second +
                            ": " + path.string());
      }
    } catch (const std::exception& e) {
      warnings_.push_back("unreadable prediction file " + path.string() + ": " + e.what());
    }
  }
}

std::optional<PredictionFile> PredictionDirectory::load(const std::string& video_id,
                                                        const std::string& expression_id) const {
  auto it = files_.find({video_id, expression_id});
  if (it == files_.end()) return std::nullopt;
  auto p = parse_prediction(read_json_file(it->second));
  if (p.video_id != video_id || p.expression_id != expression_id) {
    throw SequenceMismatch(it->second.string() + " declares " + p.video_id + "/" +
                           p.expression_id + ", expected " + video_id + "/" + expression_id);
  }
  return p;
}

// ---- evaluation ---------------------------------------------------------

namespace {

struct Task {
  const VideoRecord* video;
  const ExpressionRecord* expression;
};

struct Outcome {
  std::optional<ExpressionResult> result;
  std::optional<ExpressionError> error;
  bool missing = false;
};

template <typename E>
bool is_a(const std::exception& e) {
  return dynamic_cast<const E*>(&e) != nullptr;
}

std::string error_kind(const std::exception& e) {
  if (is_a<MalformedRle>(e)) return "MalformedRle";
  if (is_a<ShapeMismatch>(e)) return "ShapeMismatch";
  if (is_a<SequenceMismatch>(e)) return "SequenceMismatch";
  if (is_a<ParseError>(e)) return "ParseError";
  if (is_a<SchemaViolation>(e)) return "SchemaViolation";
  if (is_a<MissingPrediction>(e)) return "MissingPrediction";
  return "Error";
}

std::vector<std::string> bucket_labels(BucketKind kind) {
  std::vector<std::string> labels;
  switch (kind) {
    case BucketKind::Occlusion:
      for (int b = 0; b < kOcclusionBracketCount; ++b) {
        labels.emplace_back(bracket_label(static_cast<OcclusionBracket>(b)));
      }
      break;
    case BucketKind::Length:
      for (auto b : {LengthBucket::Short, LengthBucket::Mid, LengthBucket::Long}) {
        labels.emplace_back(bucket_label(b));
      }
      break;
    case BucketKind::Events:
      for (auto e : {EventComplexity::Single, EventComplexity::Two, EventComplexity::Multi}) {
        labels.emplace_back(to_string(e));
      }
      break;
  }
  return labels;
}

std::size_t bucket_slot(BucketKind kind, const ExpressionResult& r) {
  switch (kind) {
    case BucketKind::Occlusion:
      return static_cast<std::size_t>(r.occlusion);
    case BucketKind::Length:
      return static_cast<std::size_t>(r.length);
    case BucketKind::Events:
      return static_cast<std::size_t>(r.events);
  }
  return 0;
}

class AggregateBuilder {
 public:
  void add(const ExpressionMetrics& m) {
    j_.add(m.j);
    f_.add(m.f);
    jf_.add(m.jf);
    tiou_.add(m.tiou);
    viou_.add(m.viou);
  }
  Aggregate build() const {
    return {static_cast<std::int64_t>(j_.size()), j_.mean(), f_.mean(), jf_.mean(), tiou_.mean(),
            viou_.mean()};
  }

 private:
  CompensatedSum j_, f_, jf_, tiou_, viou_;
};

ExpressionResult score(const Task& task, const std::optional<PredictionFile>& prediction,
                       const ToleranceRule& tolerance,
                       const std::vector<std::string>& event_keywords, bool keep_per_frame) {
  const auto& video = *task.video;
  const auto& expr = *task.expression;
  const ObjectRecord* obj = video.find_object(expr.object_id);
  if (obj == nullptr) throw SchemaViolation("expression references unknown object");

  std::map<int, RleMask> masks;
  if (prediction) masks = prediction->masks;
  const MaskSequence pred(video.id, expr.id, video.num_frames, video.height, video.width,
                          std::move(masks));

  ExpressionResult r;
  r.video_id = video.id;
  r.expression_id = expr.id;
  r.object_id = expr.object_id;
  r.type = expr.type;
  r.prediction_missing = !prediction.has_value();
  r.metrics = evaluate_expression(pred, obj->masks, tolerance);
  if (!keep_per_frame) {
    r.metrics.per_frame_j.clear();
    r.metrics.per_frame_f.clear();
  }
  r.occlusion_rate = occlusion_rate(*obj, video.num_frames);
  r.occlusion = occlusion_bracket(r.occlusion_rate);
  r.length = length_bucket(expr.text);
  r.events = event_keywords.empty() ? event_complexity(expr.text)
                                    : event_complexity(expr.text, event_keywords);
  return r;
}

}  // namespace

void recompute_aggregates(EvalReport& report, const std::vector<BucketKind>& buckets) {
  AggregateBuilder overall;
  std::map<ExpressionType, AggregateBuilder> per_type;
  for (auto t : {ExpressionType::Static, ExpressionType::Dynamic, ExpressionType::Hybrid}) {
    per_type[t];
  }
  for (const auto& r : report.per_expression) {
    overall.add(r.metrics);
    per_type[r.type].add(r.metrics);
  }
  report.overall = overall.build();
  report.per_type.clear();
  for (const auto& [t, b] : per_type) report.per_type[t] = b.build();

  report.buckets.clear();
  for (auto kind : buckets) {
    BucketTable table;
    table.kind = kind;
    table.labels = bucket_labels(kind);
    std::vector<AggregateBuilder> slots(table.labels.size());
    for (const auto& r : report.per_expression) slots[bucket_slot(kind, r)].add(r.metrics);
    for (const auto& s : slots) table.values.push_back(s.build());
    report.buckets.push_back(std::move(table));
  }
}

EvalReport evaluate(const DatasetIndex& gt, const PredictionLoader& loader,
                    const EvalConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Task> tasks;
  for (const auto& v : gt.videos) {
    if (!config.split.empty() && v.split != config.split) continue;
    for (const auto& e : v.expressions) tasks.push_back({&v, &e});
  }
  std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
    if (a.video->id != b.video->id) return a.video->id < b.video->id;
    return a.expression->id < b.expression->id;
  });

  const ToleranceRule tolerance{config.boundary_th};
  const int workers = config.threads > 0 ? config.threads : default_thread_count();
  std::vector<Outcome> outcomes(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    const auto& task = tasks[i];
    auto& out = outcomes[i];
    try {
      auto prediction = loader(*task.video, *task.expression);
      if (!prediction && !config.allow_missing) {
        out.missing = true;
        return;
      }
      out.result = score(task, prediction, tolerance, config.event_keywords,
                         config.include_per_frame);
    } catch (const std::exception& e) {
      out.error = ExpressionError{task.video->id, task.expression->id, error_kind(e), e.what()};
    }
  });

  EvalReport report;
  std::size_t missing = 0;
  std::string first_missing;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (outcomes[i].missing) {
      if (missing++ == 0) first_missing = tasks[i].video->id + "/" + tasks[i].expression->id;
    }
  }
  if (missing > 0) {
    throw MissingPrediction(std::to_string(missing) + " expression(s) have no prediction (first: " +
                            first_missing + "); pass --allow-missing to score them as empty");
  }
  for (auto& o : outcomes) {
    if (o.error) {
      if (config.strict) {
        throw Error(o.error->video_id + "/" + o.error->expression_id + ": " +
                              o.error->kind + ": " + o.error->message);
      }
      report.errors.push_back(std::move(*o.error));
    } else if (o.result) {
      report.per_expression.push_back(std::move(*o.result));
    }
  }
  recompute_aggregates(report, config.buckets);

  report.run_meta.split = config.split;
  report.run_meta.boundary_th = config.boundary_th;
  report.run_meta.allow_missing = config.allow_missing;
  report.run_meta.per_frame = config.include_per_frame;
  report.run_meta.event_keywords = config.event_keywords.empty()
                                       ? std::vector<std::string>(default_event_keywords().begin(),
                                                                  default_event_keywords().end())
                                       : config.event_keywords;
  report.run_meta.workers = workers;
  report.run_meta.timing_recorded = config.include_timing;
  report.run_meta.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

EvalReport evaluate_run(const DatasetIndex& gt, const std::filesystem::path& predictions_dir,
                        const EvalConfig& config) {
  const PredictionDirectory dir(predictions_dir, gt);
  auto report = evaluate(
      gt,
      [&](const VideoRecord& v, const ExpressionRecord& e) { return dir.load(v.id, e.id); },
      config);
  report.warnings = dir.warnings();
  return report;
}

// ---- JSON ---------------------------------------------------------------

namespace {

json aggregate_to_json(const Aggregate& a) {
  return json{{"count", a.count}, {"J", a.j},       {"F", a.f},
              {"JF", a.jf},       {"tIoU", a.tiou}, {"vIoU", a.viou}};
}

Aggregate aggregate_from_json(const json& j) {
  return {j.at("count").get<std::int64_t>(), j.at("J").get<double>(),    j.at("F").get<double>(),
          j.at("JF").get<double>(),          j.at("tIoU").get<double>(), j.at("vIoU").get<double>()};
}

template <typename Enum, typename Label>
Enum enum_from_label(const std::string& s, int count, Label label) {
  for (int k = 0; k < count; ++k) {
    if (label(static_cast<Enum>(k)) == s) return static_cast<Enum>(k);
  }
  throw ParseError("unknown label '" + s + "'");
}

}  // namespace

json report_to_json(const EvalReport& report) {
  json per_expr = json::array();
  for (const auto& r : report.per_expression) {
    json e{{"video_id", r.video_id},
           {"expression_id", r.expression_id},
           {"object_id", r.object_id},
           {"type", to_string(r.type)},
           {"J", r.metrics.j},
           {"F", r.metrics.f},
           {"JF", r.metrics.jf},
           {"tIoU", r.metrics.tiou},
           {"vIoU", r.metrics.viou},
           {"missing", r.prediction_missing},
           {"occlusion_rate", r.occlusion_rate},
           {"occlusion_bracket", bracket_label(r.occlusion)},
           {"length_bucket", bucket_label(r.length)},
           {"event_bucket", to_string(r.events)}};
    if (report.run_meta.per_frame) {
      e["per_frame_J"] = r.metrics.per_frame_j;
      e["per_frame_F"] = r.metrics.per_frame_f;
    }
    per_expr.push_back(std::move(e));
  }
  json per_type = json::object();
  for (const auto& [t, a] : report.per_type) per_type[std::string(to_string(t))] = aggregate_to_json(a);

  json buckets = json::object();
  for (const auto& table : report.buckets) {
    json rows = json::array();
    for (std::size_t k = 0; k < table.labels.size(); ++k) {
      auto row = aggregate_to_json(table.values[k]);
      row["label"] = table.labels[k];
      rows.push_back(std::move(row));
    }
    buckets[std::string(to_string(table.kind))] = std::move(rows);
  }

  json errors = json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"video_id", e.video_id},
                      {"expression_id", e.expression_id},
                      {"kind", e.kind},
                      {"message", e.message}});
  }

  const auto& m = report.run_meta;
  json meta{{"split", m.split},
            {"boundary_th", m.boundary_th},
            {"allow_missing", m.allow_missing},
            {"per_frame", m.per_frame},
            {"event_keywords", m.event_keywords}};
  if (m.timing_recorded) {
    meta["wall_time_s"] = m.wall_time_s;
    meta["workers"] = m.workers;
  }

  return json{{"overall", aggregate_to_json(report.overall)},
              {"per_type", per_type},
              {"buckets", buckets},
              {"per_expression", per_expr},
              {"errors", errors},
              {"warnings", report.warnings},
              {"run_meta", meta}};
}

EvalReport report_from_json(const json& j) {
  try {
    EvalReport report;
    const auto& meta = j.at("run_meta");
    report.run_meta.split = meta.at("split").get<std::string>();
    report.run_meta.boundary_th = meta.at("boundary_th").get<double>();
    report.run_meta.allow_missing = meta.at("allow_missing").get<bool>();
    report.run_meta.per_frame = meta.at("per_frame").get<bool>();
    report.run_meta.event_keywords = meta.at("event_keywords").get<std::vector<std::string>>();
    if (meta.contains("wall_time_s")) {
      report.run_meta.timing_recorded = true;
      report.run_meta.wall_time_s = meta.at("wall_time_s").get<double>();
      report.run_meta.workers = meta.at("workers").get<int>();
    }

    report.overall = aggregate_from_json(j.at("overall"));
    for (const auto& [name, a] : j.at("per_type").items()) {
      const auto t = parse_expression_type(name);
      if (!t) throw ParseError("unknown description type '" + name + "'");
      report.per_type[*t] = aggregate_from_json(a);
    }
    for (auto kind : {BucketKind::Occlusion, BucketKind::Length, BucketKind::Events}) {
      auto it = j.at("buckets").find(std::string(to_string(kind)));
      if (it == j.at("buckets").end()) continue;
      BucketTable table;
      table.kind = kind;
      for (const auto& row : *it) {
        table.labels.push_back(row.at("label").get<std::string>());
        table.values.push_back(aggregate_from_json(row));
      }
      report.buckets.push_back(std::move(table));
    }
    for (const auto& e : j.at("per_expression")) {
      ExpressionResult r;
      r.video_id = e.at("video_id").get<std::string>();
      r.expression_id = e.at("expression_id").get<std::string>();
      r.object_id = e.at("object_id").get<std::string>();
      const auto t = parse_expression_type(e.at("type").get<std::string>());
      if (!t) throw ParseError("unknown description type");
      r.type = *t;
      r.metrics.j = e.at("J").get<double>();
      r.metrics.f = e.at("F").get<double>();
      r.metrics.jf = e.at("JF").get<double>();
      r.metrics.tiou = e.at("tIoU").get<double>();
      r.metrics.viou = e.at("vIoU").get<double>();
      if (e.contains("per_frame_J")) {
        r.metrics.per_frame_j = e.at("per_frame_J").get<std::vector<double>>();
        r.metrics.per_frame_f = e.at("per_frame_F").get<std::vector<double>>();
      }
      r.prediction_missing = e.at("missing").get<bool>();
      r.occlusion_rate = e.at("occlusion_rate").get<double>();
      r.occlusion = enum_from_label<OcclusionBracket>(
          e.at("occlusion_bracket").get<std::string>(), kOcclusionBracketCount,
          [](OcclusionBracket b) { return bracket_label(b); });
      r.length = enum_from_label<LengthBucket>(e.at("length_bucket").get<std::string>(), 3,
                                               [](LengthBucket b) { return bucket_label(b); });
      r.events = enum_from_label<EventComplexity>(
          e.at("event_bucket").get<std::string>(), 3,
          [](EventComplexity c) { return to_string(c); });
      report.per_expression.push_back(std::move(r));
    }
    for (const auto& e : j.at("errors")) {
      report.errors.push_back({e.at("video_id").get<std::string>(),
                               e.at("expression_id").get<std::string>(),
                               e.at("kind").get<std::string>(), e.at("message").get<std::string>()});
    }
    report.warnings = j.at("warnings").get<std::vector<std::string>>();
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
}

// ---- text rendering -----------------------------------------------------

namespace {

constexpr const char* kEmptyCell = "—";

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

std::string cell(const Aggregate& a, double value) { return a.count == 0 ? kEmptyCell : percent(value); }

// Pads by display width, counting UTF-8 code points rather than bytes.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char c : s) cols += (c & 0xC0) != 0x80;
  return cols >= width ? s : s + std::string(width - cols, ' ');
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string_view bucket_title(BucketKind k) {
  switch (k) {
    case BucketKind::Occlusion:
      return "Occlusion rate";
    case BucketKind::Length:
      return "Description length";
    case BucketKind::Events:
      return "Event complexity";
  }
  return "?";
}

std::string render_table(const EvalReport& report) {
  std::ostringstream out;
  const auto& m = report.run_meta;
  out << "Split: " << (m.split.empty() ? "all" : m.split)
      << "  Expressions: " << report.per_expression.size()
      << "  Errors: " << report.errors.size() << "\n\n";

  constexpr std::size_t kLabel = 10;
  constexpr std::size_t kCol = 7;
  const std::vector<std::pair<std::string, const Aggregate*>> groups = {
      {"Static", &report.per_type.at(ExpressionType::Static)},
      {"Dynamic", &report.per_type.at(ExpressionType::Dynamic)},
      {"Hybrid", &report.per_type.at(ExpressionType::Hybrid)},
      {"Overall", &report.overall}};

  out << pad("", kLabel);
  for (const auto& g : groups) out << "| " << pad(g.first, 3 * kCol);
  out << "\n" << pad("", kLabel);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out << "| " << pad("J&F", kCol) << pad("tIoU", kCol) << pad("vIoU", kCol);
  }
  out << "\n" << std::string(kLabel + groups.size() * (3 * kCol + 2), '-') << "\n";
  out << pad("Score", kLabel);
  for (const auto& g : groups) {
    const auto& a = *g.second;
    out << "| " << pad(cell(a, a.jf), kCol) << pad(cell(a, a.tiou), kCol)
        << pad(cell(a, a.viou), kCol);
  }
  out << "\n" << pad("Count", kLabel);
  for (const auto& g : groups) out << "| " << pad(std::to_string(g.second->count), 3 * kCol);
  out << "\n\nOverall J: " << cell(report.overall, report.overall.j)
      << "  F: " << cell(report.overall, report.overall.f) << "\n";

  for (const auto& table : report.buckets) {
    constexpr std::size_t kBucketLabel = 20;
    constexpr std::size_t kBucketCol = 14;
    out << "\n" << pad(std::string(bucket_title(table.kind)), kBucketLabel);
    for (const auto& l : table.labels) out << pad(l, kBucketCol);
    out << "\n" << pad("J&F", kBucketLabel);
    for (const auto& a : table.values) out << pad(cell(a, a.jf), kBucketCol);
    out << "\n" << pad("Count", kBucketLabel);
    for (const auto& a : table.values) out << pad(std::to_string(a.count), kBucketCol);
    out << "\n";
  }

  if (!report.errors.empty()) {
    out << "\nErrors:\n";
    for (const auto& e : report.errors) {
      out << "  " << e.video_id << "/" << e.expression_id << ": " << e.kind << ": " << e.message
          << "\n";
    }
  }
  if (m.timing_recorded) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", m.wall_time_s);
    out << "\nWall time: " << buf << " s  Workers: " << m.workers << "\n";
  }
  return out.str();
}

std::string render_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "group,label,count,J,F,J&F,tIoU,vIoU\n";
  auto row = [&](std::string_view group, const std::string& label, const Aggregate& a) {
    out << group << "," << csv_field(label) << "," << a.count << "," << cell(a, a.j) << ","
        << cell(a, a.f) << "," << cell(a, a.jf) << "," << cell(a, a.tiou) << ","
        << cell(a, a.viou) << "\n";
  };
  for (const auto& [t, a] : report.per_type) row("type", std::string(to_string(t)), a);
  row("overall", "Overall", report.overall);
  for (const auto& table : report.buckets) {
    for (std::size_t k = 0; k < table.labels.size(); ++k) {
      row(to_string(table.kind), table.labels[k], table.values[k]);
    }
  }
  return out.str();
}

}  // namespace

std::string render_report(const EvalReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table:
      return render_table(report);
    case ReportFormat::Csv:
      return render_csv(report);
    case ReportFormat::Json:
      return report_to_json(report).dump(2) + "\n";
  }
  return {};
}

std::string render_stats(const DatasetStats& s, ReportFormat format) {
  if (format == ReportFormat::Json) return stats_to_json(s).dump(2) + "\n";

  auto fixed = [](double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return std::string(buf);
  };
  std::vector<std::pair<std::string, std::string>> rows = {
      {"videos", std::to_string(s.num_videos)},
      {"objects", std::to_string(s.num_objects)},
      {"descriptions", std::to_string(s.num_expressions)},
      {"masks", std::to_string(s.num_masks)},
      {"object classes", std::to_string(s.num_categories)},
      {"total duration (h)", fixed(s.total_duration_s / 3600.0, "%.1f")},
      {"mean duration (s)", fixed(s.mean_duration_s, "%.1f")},
      {"mean frames", fixed(s.mean_frames, "%.1f")},
  };
  for (const auto& [name, count] : s.type_counts) {
    rows.emplace_back("type " + name, std::to_string(count) + " (" +
                                          fixed(s.type_percent.at(name), "%.2f") + "%)");
  }
  for (const auto& [split, count] : s.split_videos) {
    rows.emplace_back("split " + split, std::to_string(count) + " videos, " +
                                            std::to_string(s.split_expressions.at(split)) +
                                            " descriptions");
  }
  auto count_map = [](const std::map<std::int64_t, std::int64_t>& m) {
    std::string out;
    for (const auto& [k, v] : m) out += (out.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(v);
    return out;
  };
  auto hist = [](const Histogram& h) {
    std::string out;
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s[%g,%g):%lld", out.empty() ? "" : " ", k * h.bin_width,
                    (k + 1) * h.bin_width, static_cast<long long>(h.counts[k]));
      out += buf;
    }
    return out;
  };
  rows.emplace_back("objects per video", count_map(s.objects_per_video));
  rows.emplace_back("descriptions per object", count_map(s.descriptions_per_object));
  rows.emplace_back("video duration (s)", hist(s.video_duration));
  rows.emplace_back("object duration (s)", hist(s.object_duration));
  for (const auto& [name, count] : s.attribute_videos) {
    std::string upper = name;
    for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const double pct = s.num_videos == 0 ? 0.0 : 100.0 * count / static_cast<double>(s.num_videos);
    rows.emplace_back("attribute " + upper, std::to_string(count) + " (" + fixed(pct, "%.1f") + "%)");
  }

  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "statistic,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
  } else {
    for (const auto& [k, v] : rows) out << pad(k, 26) << v << "\n";
  }
  return out.str();
}

}  // namespace rvoseval
