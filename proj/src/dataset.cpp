#include "rvoseval/dataset.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rvoseval/errors.hpp"
#include "rvoseval/json_io.hpp"
#include "rvoseval/numeric.hpp"

namespace rvoseval {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 9> kAttributeNames = {"poc", "foc", "ov", "lra", "vc",
                                                             "arc", "sv",  "cm", "mb"};

std::string escape_pointer_token(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

std::string child(const std::string& ptr, std::string_view key) {
  return ptr + "/" + escape_pointer_token(key);
}

std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

// Collects defects for one manifest walk.
class Validator {
 public:
  std::vector<Violation> run(const json& doc) {
    if (!doc.is_object()) {
      add("", "manifest must be a JSON object");
      return std::move(out_);
    }
    auto ver = doc.find("schema_version");
    if (ver == doc.end()) {
      add("/schema_version", "missing");
    } else if (!ver->is_number_integer() || ver->get<std::int64_t>() != kManifestSchemaVersion) {
      add("/schema_version", "unsupported schema version (expected " +
                                 std::to_string(kManifestSchemaVersion) + ")");
    }
    auto videos = doc.find("videos");
    if (videos == doc.end() || !videos->is_array()) {
      add("/videos", "must be an array");
      return std::move(out_);
    }
    std::set<std::string> video_ids;
    for (std::size_t v = 0; v < videos->size(); ++v) {
      check_video((*videos)[v], child("/videos", v), video_ids);
    }
    return std::move(out_);
  }

 private:
  void add(std::string ptr, std::string msg) { out_.push_back({std::move(ptr), std::move(msg)}); }

  const json* field(const json& obj, const std::string& ptr, std::string_view key, bool required,
                    json::value_t kind) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) add(child(ptr, key), "missing");
      return nullptr;
    }
    const bool ok = kind == json::value_t::number_float
                        ? it->is_number()
                        : (kind == json::value_t::number_integer ? it->is_number_integer()
                                                                 : it->type() == kind);
    if (!ok) {
      add(child(ptr, key), "wrong type");
      return nullptr;
    }
    return &*it;
  }

  void check_video(const json& v, const std::string& ptr, std::set<std::string>& video_ids) {
    if (!v.is_object()) {
      add(ptr, "video must be an object");
      return;
    }
    std::string id;
    if (auto j = field(v, ptr, "id", true, json::value_t::string)) {
      id = j->get<std::string>();
      if (id.empty()) add(child(ptr, "id"), "must be non-empty");
      if (!video_ids.insert(id).second) add(child(ptr, "id"), "duplicate video id '" + id + "'");
    }
    if (auto j = field(v, ptr, "fps", true, json::value_t::number_float)) {
      if (!(j->get<double>() > 0.0)) add(child(ptr, "fps"), "must be > 0");
    }
    int num_frames = -1;
    if (auto j = field(v, ptr, "num_frames", true, json::value_t::number_integer)) {
      const auto n = j->get<std::int64_t>();
      if (n < 1 || n > 100'000'000) {
        add(child(ptr, "num_frames"), "must be >= 1");
      } else {
        num_frames = static_cast<int>(n);
      }
    }
    int height = -1;
    int width = -1;
    for (auto [key, slot] : {std::pair<std::string_view, int*>{"height", &height},
                             std::pair<std::string_view, int*>{"width", &width}}) {
      if (auto j = field(v, ptr, key, true, json::value_t::number_integer)) {
        const auto n = j->get<std::int64_t>();
        if (n < 1 || n > 1'000'000) {
          add(child(ptr, key), "must be >= 1");
        } else {
          *slot = static_cast<int>(n);
        }
      }
    }
    field(v, ptr, "source_tag", false, json::value_t::string);
    field(v, ptr, "split", false, json::value_t::string);

    std::set<std::string> object_ids;
    if (auto objs = field(v, ptr, "objects", true, json::value_t::array)) {
      for (std::size_t o = 0; o < objs->size(); ++o) {
        check_object((*objs)[o], child(child(ptr, "objects"), o), num_frames, height, width,
                     object_ids);
      }
    }
    if (auto exprs = field(v, ptr, "expressions", true, json::value_t::array)) {
      std::set<std::string> expr_ids;
      for (std::size_t e = 0; e < exprs->size(); ++e) {
        check_expression((*exprs)[e], child(child(ptr, "expressions"), e), object_ids, expr_ids);
      }
    }
  }

  void check_object(const json& o, const std::string& ptr, int num_frames, int height, int width,
                    std::set<std::string>& object_ids) {
    if (!o.is_object()) {
      add(ptr, "object must be an object");
      return;
    }
    if (auto j = field(o, ptr, "id", true, json::value_t::string)) {
      const auto id = j->get<std::string>();
      if (id.empty()) add(child(ptr, "id"), "must be non-empty");
      if (!object_ids.insert(id).second) add(child(ptr, "id"), "duplicate object id '" + id + "'");
    }
    field(o, ptr, "category", false, json::value_t::string);

    std::set<int> present;
    if (auto masks = field(o, ptr, "masks", true, json::value_t::object)) {
      const auto mptr = child(ptr, "masks");
      for (const auto& [key, value] : masks->items()) {
        const auto kptr = child(mptr, key);
        const auto frame = parse_frame_key(key);
        if (!frame) {
          add(kptr, "frame key must be a non-negative integer");
          continue;
        }
        if (num_frames >= 0 && *frame >= num_frames) {
          add(kptr, "frame index beyond num_frames");
          continue;
        }
        if (value.is_null()) continue;
        try {
          const auto rle = rle_from_json(value);
          if (height > 0 && width > 0 && (rle.height != height || rle.width != width)) {
            add(kptr, "mask size differs from video size");
          } else if (rle.has_foreground()) {
            present.insert(*frame);
          }
        } catch (const MalformedRle& e) {
          add(kptr, e.what());
        }
      }
    }
    if (auto boxes = field(o, ptr, "boxes", false, json::value_t::object)) {
      const auto bptr = child(ptr, "boxes");
      for (const auto& [key, value] : boxes->items()) {
        const auto kptr = child(bptr, key);
        const auto frame = parse_frame_key(key);
        if (!frame) {
          add(kptr, "frame key must be a non-negative integer");
          continue;
        }
        if (!value.is_array() || value.size() != 4 ||
            !std::all_of(value.begin(), value.end(), [](const json& x) { return x.is_number(); })) {
          add(kptr, "box must be [x, y, w, h]");
          continue;
        }
        if (!(value[2].get<double>() > 0.0) || !(value[3].get<double>() > 0.0)) {
          add(kptr, "box width and height must be > 0");
        }
        if (!present.contains(*frame)) add(kptr, "box on a frame where the mask is empty");
      }
    }
    if (auto attrs = field(o, ptr, "attributes", false, json::value_t::object)) {
      const auto aptr = child(ptr, "attributes");
      for (const auto& [key, value] : attrs->items()) {
        if (std::find(kAttributeNames.begin(), kAttributeNames.end(), key) ==
            kAttributeNames.end()) {
          add(child(aptr, key), "unknown attribute");
        } else if (!value.is_boolean()) {
          add(child(aptr, key), "must be a boolean");
        }
      }
    }
  }

  void check_expression(const json& e, const std::string& ptr,
                        const std::set<std::string>& object_ids, std::set<std::string>& expr_ids) {
    if (!e.is_object()) {
      add(ptr, "expression must be an object");
      return;
    }
    if (auto j = field(e, ptr, "id", true, json::value_t::string)) {
      const auto id = j->get<std::string>();
      if (id.empty()) add(child(ptr, "id"), "must be non-empty");
      if (!expr_ids.insert(id).second) {
        add(child(ptr, "id"), "duplicate expression id '" + id + "'");
      }
    }
    if (auto j = field(e, ptr, "object_id", true, json::value_t::string)) {
      const auto oid = j->get<std::string>();
      if (!object_ids.contains(oid)) add(child(ptr, "object_id"), "unknown object '" + oid + "'");
    }
    if (auto j = field(e, ptr, "text", true, json::value_t::string)) {
      if (j->get<std::string>().empty()) add(child(ptr, "text"), "must be non-empty");
    }
    if (auto j = field(e, ptr, "type", true, json::value_t::string)) {
      if (!parse_expression_type(j->get<std::string>())) {
        add(child(ptr, "type"), "must be Static, Dynamic or Hybrid");
      }
    }
  }

  std::vector<Violation> out_;
};

ObjectRecord build_object(const json& o, const VideoRecord& video) {
  ObjectRecord obj;
  obj.id = o.at("id").get<std::string>();
  obj.category = o.value("category", std::string{});
  std::map<int, RleMask> frames;
  for (const auto& [key, value] : o.at("masks").items()) {
    if (value.is_null()) continue;
    frames.emplace(*parse_frame_key(key), rle_from_json(value));
  }
  obj.masks = MaskSequence(video.id, obj.id, video.num_frames, video.height, video.width,
                           std::move(frames));
  if (auto boxes = o.find("boxes"); boxes != o.end()) {
    for (const auto& [key, value] : boxes->items()) {
      obj.boxes.emplace(*parse_frame_key(key), Box{value[0].get<double>(), value[1].get<double>(),
                                                   value[2].get<double>(), value[3].get<double>()});
    }
  }
  if (auto attrs = o.find("attributes"); attrs != o.end()) obj.manual_attributes = *attrs;
  return obj;
}

std::optional<bool>* attribute_slot(AttributeTags& tags, std::string_view name) {
  if (name == "poc") return &tags.poc;
  if (name == "foc") return &tags.foc;
  if (name == "ov") return &tags.ov;
  if (name == "lra") return &tags.lra;
  if (name == "vc") return &tags.vc;
  if (name == "arc") return &tags.arc;
  if (name == "sv") return &tags.sv;
  if (name == "cm") return &tags.cm;
  if (name == "mb") return &tags.mb;
  return nullptr;
}

// True when some pair of values has a ratio outside [low, high].
bool ratio_outside(const std::vector<double>& values, double low, double high) {
  if (values.empty()) return false;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  return *mx / *mn > high || *mn / *mx < low;
}

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_unicode_space(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

// Decodes one UTF-8 code point at text[pos]; malformed bytes decode as
// themselves and advance by one.
char32_t next_code_point(std::string_view text, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(text[pos]);
  int len = 1;
  char32_t cp = b0;
  if (b0 >= 0xC0 && b0 < 0xE0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if (b0 >= 0xE0 && b0 < 0xF0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xF0 && b0 < 0xF8) {
    len = 4;
    cp = b0 & 0x07;
  }
  if (len == 1 || pos + len > text.size()) {
    ++pos;
    return b0;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(text[pos + k]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

}  // namespace

std::string_view to_string(ExpressionType t) {
  switch (t) {
    case ExpressionType::Static:
      return "Static";
    case ExpressionType::Dynamic:
      return "Dynamic";
    case ExpressionType::Hybrid:
      return "Hybrid";
  }
  return "?";
}

std::optional<ExpressionType> parse_expression_type(std::string_view s) {
  if (s == "Static") return ExpressionType::Static;
  if (s == "Dynamic") return ExpressionType::Dynamic;
  if (s == "Hybrid") return ExpressionType::Hybrid;
  return std::nullopt;
}

const ObjectRecord* VideoRecord::find_object(std::string_view object_id) const {
  for (const auto& o : objects) {
    if (o.id == object_id) return &o;
  }
  return nullptr;
}

std::vector<Violation> validate_manifest(const json& doc) { return Validator{}.run(doc); }

DatasetIndex parse_manifest(const json& doc) {
  const auto violations = validate_manifest(doc);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << violations.size() << " schema violation(s)";
    for (const auto& v : violations) msg << "\n  " << (v.pointer.empty() ? "/" : v.pointer) << ": " << v.message;
    throw SchemaViolation(msg.str());
  }
  DatasetIndex index;
  index.schema_version = doc.at("schema_version").get<int>();
  for (const auto& v : doc.at("videos")) {
    VideoRecord video;
    video.id = v.at("id").get<std::string>();
    video.fps = v.at("fps").get<double>();
    video.num_frames = v.at("num_frames").get<int>();
    video.width = v.at("width").get<int>();
    video.height = v.at("height").get<int>();
    video.source_tag = v.value("source_tag", std::string{});
    video.split = v.value("split", std::string{});
    for (const auto& o : v.at("objects")) video.objects.push_back(build_object(o, video));
    for (const auto& e : v.at("expressions")) {
      video.expressions.push_back({e.at("id").get<std::string>(),
                                   e.at("object_id").get<std::string>(),
                                   e.at("text").get<std::string>(),
                                   *parse_expression_type(e.at("type").get<std::string>())});
    }
    index.videos.push_back(std::move(video));
  }
  return index;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

DatasetIndex load_manifest(const std::filesystem::path& path) {
  return parse_manifest(read_json_file(path));
}

std::string_view to_string(CriterionViolation v) {
  switch (v) {
    case CriterionViolation::DurationTooShort:
      return "DurationTooShort";
    case CriterionViolation::TooFewObjects:
      return "TooFewObjects";
    case CriterionViolation::NoDiscontinuousObject:
      return "NoDiscontinuousObject";
  }
  return "?";
}

std::vector<CriterionViolation> check_selection_criteria(const VideoRecord& video,
                                                         const SelectionRules& rules) {
  std::vector<CriterionViolation> out;
  if (!(video.duration_s() > rules.min_duration_s)) {
    out.push_back(CriterionViolation::DurationTooShort);
  }
  if (static_cast<int>(video.objects.size()) < rules.min_objects) {
    out.push_back(CriterionViolation::TooFewObjects);
  }
  const bool any_gap = std::any_of(video.objects.begin(), video.objects.end(), [&](const auto& o) {
    return static_cast<int>(o.masks.presence_set().size()) != video.num_frames;
  });
  if (!any_gap) out.push_back(CriterionViolation::NoDiscontinuousObject);
  return out;
}

double occlusion_rate(const ObjectRecord& obj, int num_frames) {
  if (num_frames <= 0) throw InvalidArgument("num_frames must be positive");
  const auto present = static_cast<double>(obj.masks.presence_set().size());
  return 1.0 - present / static_cast<double>(num_frames);
}

OcclusionBracket occlusion_bracket(double rate) {
  if (rate <= 0.25) return OcclusionBracket::Low;
  if (rate < 0.5) return OcclusionBracket::MidLow;
  if (rate < 0.75) return OcclusionBracket::MidHigh;
  return OcclusionBracket::High;
}

std::string_view bracket_label(OcclusionBracket b) {
  switch (b) {
    case OcclusionBracket::Low:
      return "[0, 0.25]";
    case OcclusionBracket::MidLow:
      return "[0.25, 0.5)";
    case OcclusionBracket::MidHigh:
      return "[0.5, 0.75)";
    case OcclusionBracket::High:
      return "[0.75, 1]";
  }
  return "?";
}

std::span<const std::string_view> attribute_names() { return kAttributeNames; }

std::optional<bool> attribute_value(const AttributeTags& tags, std::string_view name) {
  auto* slot = attribute_slot(const_cast<AttributeTags&>(tags), name);
  return slot ? *slot : std::nullopt;
}

AttributeTags manual_tags(const ObjectRecord& obj) {
  AttributeTags tags;
  if (!obj.manual_attributes.is_object()) return tags;
  for (const auto& [key, value] : obj.manual_attributes.items()) {
    if (auto* slot = attribute_slot(tags, key); slot && value.is_boolean()) {
      *slot = value.get<bool>();
    }
  }
  return tags;
}

AttributeTags tag_attributes(const ObjectRecord& obj, const VideoRecord& video,
                             const AttributeTags& manual, const AttributeRules& rules) {
  AttributeTags tags;
  tags.poc = manual.poc;
  tags.vc = manual.vc;
  tags.cm = manual.cm;
  tags.mb = manual.mb;

  const auto& present = obj.masks.presence_set();
  const int frames = video.num_frames;
  tags.ov = static_cast<int>(present.size()) < frames;
  bool interior_gap = false;
  bool long_return = false;
  for (std::size_t k = 1; k < present.size(); ++k) {
    const int gap = present[k] - present[k - 1] - 1;
    if (gap > 0) interior_gap = true;
    if (gap >= rules.reappearance_gap) long_return = true;
  }
  tags.foc = interior_gap;
  tags.lra = long_return;

  if (rules.box_tags) {
    if (obj.boxes.empty()) {
      throw MissingBoxes("object '" + obj.id + "' in '" + video.id + "' has no boxes");
    }
    std::vector<double> aspects;
    std::vector<double> areas;
    for (const auto& [t, b] : obj.boxes) {
      aspects.push_back(b.w / b.h);
      areas.push_back(b.w * b.h);
    }
    tags.arc = ratio_outside(aspects, rules.ratio_low, rules.ratio_high);
    tags.sv = ratio_outside(areas, rules.ratio_low, rules.ratio_high);
  }
  return tags;
}

std::string_view to_string(EventComplexity e) {
  switch (e) {
    case EventComplexity::Single:
      return "Single-event";
    case EventComplexity::Two:
      return "Two-event";
    case EventComplexity::Multi:
      return "Multi-event";
  }
  return "?";
}

std::span<const std::string> default_event_keywords() {
  static const std::vector<std::string> kKeywords = {"then",  "finally", "ultimately",
                                                     "after", "before",  "later"};
  return kKeywords;
}

EventComplexity event_complexity(std::string_view text, std::span<const std::string> keywords) {
  std::set<std::string> wanted;
  for (const auto& k : keywords) wanted.insert(ascii_lower(k));
  std::size_t hits = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && !is_word_byte(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && is_word_byte(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start && wanted.contains(ascii_lower(text.substr(start, pos - start)))) ++hits;
  }
  if (hits == 0) return EventComplexity::Single;
  if (hits == 1) return EventComplexity::Two;
  return EventComplexity::Multi;
}

std::string_view to_string(LengthBucket b) {
  switch (b) {
    case LengthBucket::Short:
      return "Short";
    case LengthBucket::Mid:
      return "Mid";
    case LengthBucket::Long:
      return "Long";
  }
  return "?";
}

std::string_view bucket_label(LengthBucket b) {
  switch (b) {
    case LengthBucket::Short:
      return "<10";
    case LengthBucket::Mid:
      return "[10, 20]";
    case LengthBucket::Long:
      return ">20";
  }
  return "?";
}

std::size_t token_count(std::string_view text) {
  std::size_t tokens = 0;
  bool in_token = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const bool space = is_unicode_space(next_code_point(text, pos));
    if (!space && !in_token) ++tokens;
    in_token = !space;
  }
  return tokens;
}

LengthBucket length_bucket(std::string_view text) {
  const auto n = token_count(text);
  if (n < 10) return LengthBucket::Short;
  if (n <= 20) return LengthBucket::Mid;
  return LengthBucket::Long;
}

namespace {

void histogram_add(Histogram& h, double value) {
  const auto bin = static_cast<std::size_t>(std::floor(value / h.bin_width));
  if (h.counts.size() <= bin) h.counts.resize(bin + 1, 0);
  ++h.counts[bin];
}

}  // namespace

DatasetStats compute_statistics(const DatasetIndex& index, const StatsOptions& options) {
  if (!(options.duration_bin_s > 0.0)) throw InvalidArgument("histogram bin width must be > 0");
  DatasetStats s;
  s.video_duration.bin_width = options.duration_bin_s;
  s.object_duration.bin_width = options.duration_bin_s;
  for (auto t : {ExpressionType::Static, ExpressionType::Dynamic, ExpressionType::Hybrid}) {
    s.type_counts[std::string(to_string(t))] = 0;
  }
  for (auto name : kAttributeNames) s.attribute_videos[std::string(name)] = 0;

  std::set<std::string> categories;
  CompensatedSum duration;
  for (const auto& video : index.videos) {
    ++s.num_videos;
    s.total_frames += video.num_frames;
    duration.add(video.duration_s());
    histogram_add(s.video_duration, video.duration_s());
    const std::string split = video.split.empty() ? "unassigned" : video.split;
    ++s.split_videos[split];
    s.split_expressions[split] += static_cast<std::int64_t>(video.expressions.size());
    ++s.objects_per_video[static_cast<std::int64_t>(video.objects.size())];

    std::set<std::string> video_attrs;
    for (const auto& obj : video.objects) {
      ++s.num_objects;
      categories.insert(obj.category);
      const auto present = static_cast<std::int64_t>(obj.masks.presence_set().size());
      s.num_masks += present;
      histogram_add(s.object_duration, static_cast<double>(present) / video.fps);
      const auto descriptions = std::count_if(
          video.expressions.begin(), video.expressions.end(),
          [&](const ExpressionRecord& e) { return e.object_id == obj.id; });
      ++s.descriptions_per_object[descriptions];

      AttributeRules rules;
      rules.box_tags = !obj.boxes.empty();
      const auto tags = tag_attributes(obj, video, manual_tags(obj), rules);
      for (auto name : kAttributeNames) {
        if (attribute_value(tags, name).value_or(false)) video_attrs.insert(std::string(name));
      }
    }
    for (const auto& name : video_attrs) ++s.attribute_videos[name];
    for (const auto& e : video.expressions) {
      ++s.num_expressions;
      ++s.type_counts[std::string(to_string(e.type))];
    }
  }
  s.num_categories = static_cast<std::int64_t>(categories.size());
  s.total_duration_s = duration.total();
  if (s.num_videos > 0) {
    s.mean_duration_s = s.total_duration_s / static_cast<double>(s.num_videos);
    s.mean_frames = static_cast<double>(s.total_frames) / static_cast<double>(s.num_videos);
  }
  for (const auto& [name, count] : s.type_counts) {
    s.type_percent[name] = s.num_expressions == 0
                               ? 0.0
                               : 100.0 * static_cast<double>(count) /
                                     static_cast<double>(s.num_expressions);
  }
  return s;
}

namespace {

json count_map_to_json(const std::map<std::int64_t, std::int64_t>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

std::map<std::int64_t, std::int64_t> count_map_from_json(const json& j) {
  std::map<std::int64_t, std::int64_t> m;
  for (const auto& [k, v] : j.items()) m[std::stoll(k)] = v.get<std::int64_t>();
  return m;
}

}  // namespace

json stats_to_json(const DatasetStats& s) {
  return json{
      {"num_videos", s.num_videos},
      {"num_objects", s.num_objects},
      {"num_expressions", s.num_expressions},
      {"num_masks", s.num_masks},
      {"num_categories", s.num_categories},
      {"total_frames", s.total_frames},
      {"total_duration_s", s.total_duration_s},
      {"mean_duration_s", s.mean_duration_s},
      {"mean_frames", s.mean_frames},
      {"type_counts", s.type_counts},
      {"type_percent", s.type_percent},
      {"split_videos", s.split_videos},
      {"split_expressions", s.split_expressions},
      {"video_duration_hist",
       {{"bin_width_s", s.video_duration.bin_width}, {"counts", s.video_duration.counts}}},
      {"object_duration_hist",
       {{"bin_width_s", s.object_duration.bin_width}, {"counts", s.object_duration.counts}}},
      {"objects_per_video", count_map_to_json(s.objects_per_video)},
      {"descriptions_per_object", count_map_to_json(s.descriptions_per_object)},
      {"attribute_videos", s.attribute_videos},
  };
}

DatasetStats stats_from_json(const json& j) {
  DatasetStats s;
  s.num_videos = j.at("num_videos").get<std::int64_t>();
  s.num_objects = j.at("num_objects").get<std::int64_t>();
  s.num_expressions = j.at("num_expressions").get<std::int64_t>();
  s.num_masks = j.at("num_masks").get<std::int64_t>();
  s.num_categories = j.at("num_categories").get<std::int64_t>();
  s.total_frames = j.at("total_frames").get<std::int64_t>();
  s.total_duration_s = j.at("total_duration_s").get<double>();
  s.mean_duration_s = j.at("mean_duration_s").get<double>();
  s.mean_frames = j.at("mean_frames").get<double>();
  s.type_counts = j.at("type_counts").get<std::map<std::string, std::int64_t>>();
  s.type_percent = j.at("type_percent").get<std::map<std::string, double>>();
  s.split_videos = j.at("split_videos").get<std::map<std::string, std::int64_t>>();
  s.split_expressions = j.at("split_expressions").get<std::map<std::string, std::int64_t>>();
  s.video_duration.bin_width = j.at("video_duration_hist").at("bin_width_s").get<double>();
  s.video_duration.counts = j.at("video_duration_hist").at("counts").get<std::vector<std::int64_t>>();
  s.object_duration.bin_width = j.at("object_duration_hist").at("bin_width_s").get<double>();
  s.object_duration.counts =
      j.at("object_duration_hist").at("counts").get<std::vector<std::int64_t>>();
  s.objects_per_video = count_map_from_json(j.at("objects_per_video"));
  s.descriptions_per_object = count_map_from_json(j.at("descriptions_per_object"));
  s.attribute_videos = j.at("attribute_videos").get<std::map<std::string, std::int64_t>>();
  return s;
}

}  // namespace rvoseval
