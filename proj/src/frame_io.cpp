#include "rvoseval/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "rvoseval/dataset.hpp"
#include "rvoseval/errors.hpp"

namespace rvoseval {

namespace fs = std::filesystem;

namespace {

class PnmReader {
 public:
  explicit PnmReader(std::string bytes) : data_(std::move(bytes)) {}

  int next_int() {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("malformed netpbm header");
    return std::stoi(data_.substr(start, pos_ - start));
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_header() {
    if (pos_ >= data_.size()) throw ParseError("truncated netpbm file");
    ++pos_;
  }

  int next_bit() {
    skip_space_and_comments();
    if (pos_ >= data_.size() || (data_[pos_] != '0' && data_[pos_] != '1')) {
      throw ParseError("malformed plain PBM data");
    }
    return data_[pos_++] - '0';
  }

  std::string_view rest() const { return std::string_view(data_).substr(pos_); }

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
        ++pos_;
      } else if (data_[pos_] == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string data_;
  std::size_t pos_ = 0;
};

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint8_t scale(int v, int maxval) {
  return static_cast<std::uint8_t>(maxval == 255 ? v : (v * 255 + maxval / 2) / maxval);
}

// Natural order for names like frame_2 < frame_10.
bool natural_less(const fs::path& a, const fs::path& b) {
  const auto sa = a.filename().string();
  const auto sb = b.filename().string();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() && j < sb.size()) {
    if (std::isdigit(static_cast<unsigned char>(sa[i])) &&
        std::isdigit(static_cast<unsigned char>(sb[j]))) {
      std::size_t ei = i;
      std::size_t ej = j;
      while (ei < sa.size() && std::isdigit(static_cast<unsigned char>(sa[ei]))) ++ei;
      while (ej < sb.size() && std::isdigit(static_cast<unsigned char>(sb[ej]))) ++ej;
      const auto na = std::stoull(sa.substr(i, ei - i));
      const auto nb = std::stoull(sb.substr(j, ej - j));
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (sa[i] != sb[j]) return sa[i] < sb[j];
      ++i;
      ++j;
    }
  }
  return sa.size() - i < sb.size() - j;
}

}  // namespace

PnmImage read_pnm(const fs::path& path) {
  const auto raw = read_bytes(path);
  if (raw.size() < 2 || raw[0] != 'P' || raw[1] < '1' || raw[1] > '6') {
    throw ParseError(path.string() + ": not a netpbm image");
  }
  const int kind = raw[1] - '0';
  PnmReader r(raw.substr(2));
  PnmImage img;
  img.width = r.next_int();
  img.height = r.next_int();
  if (img.width <= 0 || img.height <= 0) throw ParseError(path.string() + ": empty image");
  const int maxval = (kind == 1 || kind == 4) ? 1 : r.next_int();
  if (maxval <= 0 || maxval > 255) throw ParseError(path.string() + ": only 8-bit images supported");
  img.channels = (kind == 3 || kind == 6) ? 3 : 1;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height * img.channels;
  img.samples.resize(n);

  switch (kind) {
    case 1:
      for (auto& s : img.samples) s = r.next_bit() ? 255 : 0;  // PBM: 1 is black/ink
      break;
    case 2:
    case 3:
      for (auto& s : img.samples) s = scale(r.next_int(), maxval);
      break;
    case 4: {
      r.end_header();
      const auto data = r.rest();
      const std::size_t row_bytes = (static_cast<std::size_t>(img.width) + 7) / 8;
      if (data.size() < row_bytes * img.height) throw ParseError(path.string() + ": truncated");
      for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
          const auto byte = static_cast<unsigned char>(data[y * row_bytes + x / 8]);
          img.samples[static_cast<std::size_t>(y) * img.width + x] =
              ((byte >> (7 - x % 8)) & 1) ? 255 : 0;
        }
      }
      break;
    }
    default: {
      r.end_header();
      const auto data = r.rest();
      if (data.size() < n) throw ParseError(path.string() + ": truncated");
      for (std::size_t k = 0; k < n; ++k) {
        img.samples[k] = scale(static_cast<unsigned char>(data[k]), maxval);
      }
    }
  }
  return img;
}

LumaFrame to_luma(const PnmImage& image) {
  if (image.channels == 1) return LumaFrame(image.height, image.width, image.samples);
  return to_luma(RgbFrame{image.height, image.width, image.samples});
}

void write_pgm(const fs::path& path, const DenseMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << "P5\n" << mask.width() << " " << mask.height() << "\n255\n";
  for (auto p : mask.to_pixels()) out.put(p ? static_cast<char>(255) : '\0');
}

std::vector<LumaFrame> load_frames(const fs::path& source) {
  std::vector<LumaFrame> frames;
  if (fs::is_directory(source)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(source)) {
      const auto ext = e.path().extension();
      if (e.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm" || ext == ".pbm")) {
        files.push_back(e.path());
      }
    }
    std::sort(files.begin(), files.end(), natural_less);
    for (const auto& f : files) frames.push_back(to_luma(read_pnm(f)));
    if (frames.empty()) throw EmptyVideo("no netpbm frames found in " + source.string());
    return frames;
  }

  fs::path sidecar = source;
  sidecar += ".json";
  if (!fs::exists(sidecar)) sidecar = fs::path(source).replace_extension(".json");
  if (!fs::exists(sidecar)) {
    throw ParseError("raw frame file " + source.string() + " needs a " + sidecar.string() +
                     " descriptor");
  }
  const auto desc = read_json_file(sidecar);
  int width = 0;
  int height = 0;
  int count = 0;
  std::string format;
  try {
    width = desc.at("width").get<int>();
    height = desc.at("height").get<int>();
    count = desc.at("num_frames").get<int>();
    format = desc.value("format", std::string("gray"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(sidecar.string() + ": " + e.what());
  }
  if (width <= 0 || height <= 0 || count < 0) throw ParseError(sidecar.string() + ": bad sizes");
  const std::size_t luma = static_cast<std::size_t>(width) * height;
  std::size_t frame_bytes = luma;
  if (format == "yuv420p") {
    frame_bytes += 2 * (static_cast<std::size_t>(width + 1) / 2) * ((height + 1) / 2);
  } else if (format != "gray") {
    throw ParseError(sidecar.string() + ": unknown format '" + format + "'");
  }
  const auto bytes = read_bytes(source);
  if (bytes.size() < frame_bytes * count) {
    throw ParseError(source.string() + " is shorter than the descriptor claims");
  }
  for (int t = 0; t < count; ++t) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data()) + frame_bytes * t;
    frames.emplace_back(height, width, std::vector<std::uint8_t>(p, p + luma));
  }
  if (frames.empty()) throw EmptyVideo(source.string() + " holds no frames");
  return frames;
}

nlohmann::json clips_to_json(const std::vector<ClipDecomposition>& clips, int height, int width,
                             const MotionSearchParams& params, int gop) {
  using nlohmann::json;
  json out_clips = json::array();
  int rows = 0;
  int cols = 0;
  for (const auto& clip : clips) {
    json fields = json::array();
    for (const auto& field : clip.motion_fields) {
      rows = field.rows;
      cols = field.cols;
      json vecs = json::array();
      for (const auto& v : field.vectors) vecs.push_back({v.i, v.j});
      fields.push_back(std::move(vecs));
    }
    out_clips.push_back({{"keyframe", clip.keyframe_index}, {"fields", std::move(fields)}});
  }
  if (rows == 0) {
    rows = (height + params.block - 1) / params.block;
    cols = (width + params.block - 1) / params.block;
  }
  return json{{"height", height},     {"width", width},
              {"block", params.block}, {"search", params.search_radius},
              {"gop", gop},           {"rows", rows},
              {"cols", cols},         {"clips", std::move(out_clips)}};
}

}  // namespace rvoseval
