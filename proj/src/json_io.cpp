#include "rvoseval/json_io.hpp"

#include <charconv>
#include <limits>

#include "rvoseval/errors.hpp"

namespace rvoseval {

nlohmann::json rle_to_json(const RleMask& rle) {
  return nlohmann::json{{"size", {rle.height, rle.width}}, {"counts", rle.counts}};
}

RleMask rle_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw MalformedRle("RLE must be a JSON object");
  auto size = j.find("size");
  auto counts = j.find("counts");
  if (size == j.end() || counts == j.end()) throw MalformedRle("RLE needs \"size\" and \"counts\"");
  if (!size->is_array() || size->size() != 2 || !(*size)[0].is_number_integer() ||
      !(*size)[1].is_number_integer()) {
    throw MalformedRle("RLE \"size\" must be [H, W]");
  }
  if (!counts->is_array()) throw MalformedRle("RLE \"counts\" must be an array");
  RleMask rle;
  const auto h = (*size)[0].get<std::int64_t>();
  const auto w = (*size)[1].get<std::int64_t>();
  if (h <= 0 || w <= 0 || h > std::numeric_limits<int>::max() ||
      w > std::numeric_limits<int>::max()) {
    throw MalformedRle("RLE dimensions must be positive");
  }
  rle.height = static_cast<int>(h);
  rle.width = static_cast<int>(w);
  rle.counts.reserve(counts->size());
  for (const auto& c : *counts) {
    if (!c.is_number_integer()) throw MalformedRle("RLE run is not an integer");
    const auto v = c.get<std::int64_t>();
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
      throw MalformedRle("RLE run out of range: " + std::to_string(v));
    }
    rle.counts.push_back(static_cast<std::uint32_t>(v));
  }
  rle.validate();
  return rle;
}

std::optional<int> parse_frame_key(std::string_view key) {
  if (key.empty() || key.size() > 9 || (key.size() > 1 && key[0] == '0')) return std::nullopt;
  int value = 0;
  auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc{} || p != key.data() + key.size() || value < 0) return std::nullopt;
  return value;
}

}  // namespace rvoseval
