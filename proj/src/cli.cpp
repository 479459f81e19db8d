#include "rvoseval/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rvoseval/dataset.hpp"
#include "rvoseval/errors.hpp"
#include "rvoseval/frame_io.hpp"
#include "rvoseval/json_io.hpp"
#include "rvoseval/parallel.hpp"
#include "rvoseval/report.hpp"

namespace rvoseval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + out_path);
  f << text;
}

DenseMask read_dense_mask(const fs::path& path) {
  if (path.extension() == ".json") {
    const auto j = read_json_file(path);
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
      throw ParseError(path.string() + ": expected a non-empty 2-D array of 0/1 rows");
    }
    const int h = static_cast<int>(j.size());
    const int w = static_cast<int>(j[0].size());
    DenseMask m(h, w);
    for (int r = 0; r < h; ++r) {
      if (!j[r].is_array() || static_cast<int>(j[r].size()) != w) {
        throw ParseError(path.string() + ": ragged mask rows");
      }
      for (int c = 0; c < w; ++c) {
        const auto& v = j[r][c];
        if (!(v.is_number_integer() || v.is_boolean())) throw ParseError(path.string() + ": non-binary pixel");
        const bool on = v.is_boolean() ? v.get<bool>() : v.get<std::int64_t>() != 0;
        if (on) m.set(r, c);
      }
    }
    return m;
  }
  const auto img = read_pnm(path);
  DenseMask m(img.height, img.width);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      bool on = false;
      for (int k = 0; k < img.channels; ++k) {
        on |= img.samples[(static_cast<std::size_t>(r) * img.width + c) * img.channels + k] != 0;
      }
      if (on) m.set(r, c);
    }
  }
  return m;
}

std::string dense_to_json_text(const DenseMask& m) {
  std::ostringstream s;
  s << "[\n";
  for (int r = 0; r < m.height(); ++r) {
    s << "  [";
    for (int c = 0; c < m.width(); ++c) s << (c ? "," : "") << (m.get(r, c) ? 1 : 0);
    s << "]" << (r + 1 < m.height() ? "," : "") << "\n";
  }
  s << "]\n";
  return s.str();
}

ReportFormat format_or_throw(const std::string& s) {
  auto f = parse_report_format(s);
  if (!f) throw CLI::ValidationError("--format", "must be table, csv or json");
  return *f;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Long-term referring video object segmentation evaluator", "rvoseval"};
  app.require_subcommand(1);

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against a manifest");
  std::string gt_path;
  std::string pred_dir;
  std::string split;
  std::string format = "table";
  std::string out_path;
  int threads = default_thread_count();
  std::vector<std::string> bucket_names;
  bool allow_missing = false;
  bool strict = false;
  bool per_frame = false;
  bool timing = false;
  double boundary_th = 0.008;
  std::vector<std::string> keywords;
  evaluate_cmd->add_option("--gt", gt_path, "Ground-truth manifest")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--pred", pred_dir, "Prediction directory")->required()->check(CLI::ExistingDirectory);
  evaluate_cmd->add_option("--split", split, "Evaluate one split only")
      ->check(CLI::IsMember({"train", "valid", "test"}));
  evaluate_cmd->add_option("--format", format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  evaluate_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  evaluate_cmd->add_option("--threads", threads, "Worker count (default: $RVOSEVAL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--buckets", bucket_names, "occlusion,length,events")
      ->delimiter(',')
      ->check(CLI::IsMember({"occlusion", "length", "events"}));
  evaluate_cmd->add_flag("--allow-missing", allow_missing, "Score missing predictions as empty");
  evaluate_cmd->add_flag("--strict", strict, "Abort on the first per-expression error");
  evaluate_cmd->add_option("--boundary-th", boundary_th,
                           "Boundary tolerance: fraction of the diagonal, or pixels if >= 1")
      ->check(CLI::NonNegativeNumber);
  evaluate_cmd->add_option("--event-keywords", keywords, "Override the event keyword list")
      ->delimiter(',');
  evaluate_cmd->add_flag("--per-frame", per_frame, "Include per-frame J/F traces in JSON");
  evaluate_cmd->add_flag("--timing", timing, "Include wall time and worker count in the report");

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics");
  double bin_width = 10.0;
  stats_cmd->add_option("--gt", gt_path, "Manifest")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--format", format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  stats_cmd->add_option("--out", out_path, "Output file");
  stats_cmd->add_option("--bin-width", bin_width, "Duration histogram bin width in seconds")
      ->check(CLI::PositiveNumber);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check manifest schema and selection criteria");
  bool schema_only = false;
  validate_cmd->add_option("--gt", gt_path, "Manifest")->required()->check(CLI::ExistingFile);
  validate_cmd->add_flag("--schema-only", schema_only, "Skip the video selection criteria");

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Keyframes plus block-matching motion fields");
  std::string frames_path;
  int gop = kMaxClipLength;
  MotionSearchParams params;
  int decompose_threads = 1;
  decompose_cmd->add_option("--frames", frames_path, "Frame directory or raw planar file")
      ->required()
      ->check(CLI::ExistingPath);
  decompose_cmd->add_option("--gop", gop, "Frames per clip")->check(CLI::Range(1, kMaxClipLength));
  decompose_cmd->add_option("--block", params.block, "Macroblock size")->check(CLI::Range(1, 256));
  decompose_cmd->add_option("--search", params.search_radius, "Search radius in pixels")
      ->check(CLI::Range(0, 256));
  decompose_cmd->add_option("--out", out_path, "Clips JSON output");
  decompose_cmd->add_option("--threads", decompose_threads, "Worker count")->check(CLI::PositiveNumber);

  // rle
  auto* rle_cmd = app.add_subcommand("rle", "Mask run-length codec");
  rle_cmd->require_subcommand(1);
  std::string rle_input;
  auto* encode_cmd = rle_cmd->add_subcommand("encode", "Dense mask (.json 0/1 rows or netpbm) to RLE JSON");
  encode_cmd->add_option("file", rle_input)->required()->check(CLI::ExistingFile);
  encode_cmd->add_option("--out", out_path, "Output file");
  auto* decode_cmd = rle_cmd->add_subcommand("decode", "RLE JSON to dense mask (JSON rows, or PGM via --out x.pgm)");
  decode_cmd->add_option("file", rle_input)->required()->check(CLI::ExistingFile);
  decode_cmd->add_option("--out", out_path, "Output file");

  std::vector<const char*> argv{"rvoseval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (evaluate_cmd->parsed()) {
      EvalConfig config;
      config.split = split;
      config.threads = threads;
      config.allow_missing = allow_missing;
      config.strict = strict;
      config.boundary_th = boundary_th;
      config.include_per_frame = per_frame;
      config.include_timing = timing;
      config.event_keywords = keywords;
      for (const auto& b : bucket_names) {
        const auto kind = *parse_bucket_kind(b);
        if (std::find(config.buckets.begin(), config.buckets.end(), kind) == config.buckets.end()) {
          config.buckets.push_back(kind);
        }
      }
      const auto index = load_manifest(gt_path);
      const auto report = evaluate_run(index, pred_dir, config);
      emit(render_report(report, format_or_throw(format)), out_path, out);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      err << "evaluated " << report.per_expression.size() << " expression(s), "
          << report.errors.size() << " error(s) in " << report.run_meta.wall_time_s << " s with "
          << report.run_meta.workers << " worker(s)\n";
      return kExitOk;
    }
    if (stats_cmd->parsed()) {
      const auto index = load_manifest(gt_path);
      emit(render_stats(compute_statistics(index, {bin_width}), format_or_throw(format)), out_path,
           out);
      return kExitOk;
    }
    if (validate_cmd->parsed()) {
      const auto doc = read_json_file(gt_path);
      const auto violations = validate_manifest(doc);
      for (const auto& v : violations) {
        out << (v.pointer.empty() ? "/" : v.pointer) << ": " << v.message << "\n";
      }
      if (!violations.empty()) {
        out << violations.size() << " schema violation(s)\n";
        return kExitDataError;
      }
      const auto index = parse_manifest(doc);
      std::size_t failures = 0;
      if (!schema_only) {
        for (const auto& video : index.videos) {
          for (auto c : check_selection_criteria(video)) {
            out << "video " << video.id << ": " << to_string(c) << "\n";
            ++failures;
          }
        }
      }
      if (failures > 0) {
        out << failures << " selection criterion violation(s)\n";
        return kExitDataError;
      }
      out << "OK: " << index.videos.size() << " video(s)\n";
      return kExitOk;
    }
    if (decompose_cmd->parsed()) {
      const auto frames = load_frames(frames_path);
      const auto clips = decompose(frames, gop, params, decompose_threads);
      const auto j = clips_to_json(clips, frames.front().height, frames.front().width, params, gop);
      emit(j.dump() + "\n", out_path, out);
      return kExitOk;
    }
    if (encode_cmd->parsed()) {
      emit(rle_to_json(rle_encode(read_dense_mask(rle_input))).dump() + "\n", out_path, out);
      return kExitOk;
    }
    if (decode_cmd->parsed()) {
      const auto mask = rle_decode(rle_from_json(read_json_file(rle_input)));
      if (fs::path(out_path).extension() == ".pgm") {
        write_pgm(out_path, mask);
      } else {
        emit(dense_to_json_text(mask), out_path, out);
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace rvoseval
