#pragma once

#include <filesystem>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvoseval/mask.hpp"
#include "rvoseval/motion.hpp"

namespace rvoseval {

/// Netpbm image (P1-P6) with 1 or 3 channels, 8-bit samples.
struct PnmImage {
  int height = 0;
  int width = 0;
  int channels = 1;
  std::vector<std::uint8_t> samples;
};

PnmImage read_pnm(const std::filesystem::path& path);
LumaFrame to_luma(const PnmImage& image);

/// Writes a binary PGM with foreground as 255.
void write_pgm(const std::filesystem::path& path, const DenseMask& mask);

/// Frames from either a directory of numbered .pgm/.ppm/.pnm images (natural
/// numeric order) or a raw planar file with a JSON sidecar
/// {"width","height","num_frames"[,"format":"gray"|"yuv420p"]} stored next to
/// it as <file>.json.
std::vector<LumaFrame> load_frames(const std::filesystem::path& source);

nlohmann::json clips_to_json(const std::vector<ClipDecomposition>& clips, int height, int width,
                             const MotionSearchParams& params, int gop);

}  // namespace rvoseval
