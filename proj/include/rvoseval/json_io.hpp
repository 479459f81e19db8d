#pragma once

#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rvoseval/mask.hpp"

namespace rvoseval {

/// {"size":[H,W],"counts":[...]}
nlohmann::json rle_to_json(const RleMask& rle);

/// Parses and validates the RLE JSON form; throws MalformedRle on any defect.
RleMask rle_from_json(const nlohmann::json& j);

/// Frame keys are canonical non-negative decimal integers ("0", "17").
std::optional<int> parse_frame_key(std::string_view key);

}  // namespace rvoseval
