#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "rvoseval/dataset.hpp"
#include "rvoseval/errors.hpp"
#include "rvoseval/json_io.hpp"
#include "rvoseval/metrics.hpp"
#include "rvoseval/motion.hpp"
#include "rvoseval/report.hpp"

namespace py = pybind11;
using namespace rvoseval;

namespace {

using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;
using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::handle& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

DenseMask dense_from_array(const BoolArray& a) {
  if (a.ndim() != 2) throw InvalidArgument("mask must be a 2-D array");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  const auto* data = reinterpret_cast<const std::uint8_t*>(a.data());
  return DenseMask::from_pixels(h, w, {data, static_cast<std::size_t>(h) * w});
}

BoolArray array_from_dense(const DenseMask& m) {
  BoolArray out({m.height(), m.width()});
  auto* data = out.mutable_data();
  for (int r = 0; r < m.height(); ++r)
    for (int c = 0; c < m.width(); ++c) data[static_cast<std::size_t>(r) * m.width() + c] = m.get(r, c);
  return out;
}

// Accepts a (T, H, W) array or a sequence of RLE dicts / None.
MaskSequence sequence_from_python(const py::handle& obj, const std::string& subject) {
  if (py::isinstance<py::array>(obj)) {
    const auto a = BoolArray::ensure(obj);
    if (!a || a.ndim() != 3) throw InvalidArgument("mask volume must have shape (T, H, W)");
    const auto t = static_cast<int>(a.shape(0));
    const auto h = static_cast<int>(a.shape(1));
    const auto w = static_cast<int>(a.shape(2));
    const auto* data = reinterpret_cast<const std::uint8_t*>(a.data());
    const auto plane = static_cast<std::size_t>(h) * w;
    std::map<int, RleMask> frames;
    for (int f = 0; f < t; ++f) {
      const auto m = DenseMask::from_pixels(h, w, {data + plane * f, plane});
      if (m.any()) frames.emplace(f, rle_encode(m));
    }
    return MaskSequence("", subject, t, h, w, std::move(frames));
  }
  const auto items = py::reinterpret_borrow<py::sequence>(obj);
  std::map<int, RleMask> frames;
  int h = 0, w = 0;
  for (std::size_t f = 0; f < items.size(); ++f) {
    if (items[f].is_none()) continue;
    auto rle = rle_from_json(from_python(items[f]));
    h = rle.height;
    w = rle.width;
    frames.emplace(static_cast<int>(f), std::move(rle));
  }
  return MaskSequence("", subject, static_cast<int>(items.size()), h, w, std::move(frames));
}

std::vector<BucketKind> parse_buckets(const std::vector<std::string>& names) {
  std::vector<BucketKind> out;
  for (const auto& n : names) {
    const auto k = parse_bucket_kind(n);
    if (!k) throw InvalidArgument("unknown bucket '" + n + "'");
    out.push_back(*k);
  }
  return out;
}

std::vector<LumaFrame> frames_from_array(const U8Array& a) {
  if (a.ndim() != 3) throw InvalidArgument("frames must have shape (T, H, W)");
  const auto t = static_cast<int>(a.shape(0));
  const auto h = static_cast<int>(a.shape(1));
  const auto w = static_cast<int>(a.shape(2));
  const auto plane = static_cast<std::size_t>(h) * w;
  std::vector<LumaFrame> frames;
  frames.reserve(static_cast<std::size_t>(t));
  for (int f = 0; f < t; ++f) {
    const auto* p = a.data() + plane * f;
    frames.emplace_back(h, w, std::vector<std::uint8_t>(p, p + plane));
  }
  return frames;
}

py::array_t<std::int32_t> field_array(const MotionVectorField& field) {
  py::array_t<std::int32_t> out({field.rows, field.cols, 2});
  auto* d = out.mutable_data();
  for (std::size_t k = 0; k < field.vectors.size(); ++k) {
    d[2 * k] = field.vectors[k].i;
    d[2 * k + 1] = field.vectors[k].j;
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Long-term referring video segmentation evaluation core";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<MalformedRle>(m, "MalformedRle", error);
  py::register_exception<ShapeMismatch>(m, "ShapeMismatch", error);
  py::register_exception<SequenceMismatch>(m, "SequenceMismatch", error);
  py::register_exception<EmptyVideo>(m, "EmptyVideo", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<SchemaViolation>(m, "SchemaViolation", error);
  py::register_exception<MissingPrediction>(m, "MissingPrediction", error);
  py::register_exception<MissingBoxes>(m, "MissingBoxes", error);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error);

  m.def(
      "rle_encode",
      [](const BoolArray& mask) { return to_python(rle_to_json(rle_encode(dense_from_array(mask)))); },
      py::arg("mask"), "Column-major RLE of a 2-D boolean mask.");

  m.def(
      "rle_decode", [](const py::dict& rle) { return array_from_dense(rle_decode(rle_from_json(from_python(rle)))); },
      py::arg("rle"), "Dense boolean mask from an RLE dict.");

  m.def(
      "evaluate_expression",
      [](const py::handle& pred, const py::handle& gt, double boundary_th, bool per_frame) {
        const auto ps = sequence_from_python(pred, "pred");
        const auto gs = sequence_from_python(gt, "gt");
        ExpressionMetrics r;
        {
          py::gil_scoped_release release;
          r = evaluate_expression(ps, gs, ToleranceRule{boundary_th});
        }
        py::dict out;
        out["J"] = r.j;
        out["F"] = r.f;
        out["JF"] = r.jf;
        out["tIoU"] = r.tiou;
        out["vIoU"] = r.viou;
        if (per_frame) {
          out["per_frame_J"] = r.per_frame_j;
          out["per_frame_F"] = r.per_frame_f;
        }
        return out;
      },
      py::arg("pred"), py::arg("gt"), py::arg("boundary_th") = 0.008, py::arg("per_frame") = false,
      "J, F, J&F, tIoU and vIoU for one prediction/ground-truth pair.\n\n"
      "Each argument is a (T, H, W) boolean array or a length-T list of RLE dicts / None.");

  m.def(
      "evaluate_run",
      [](const std::string& gt_path, const std::string& pred_dir, const std::string& split,
         int threads, bool allow_missing, bool strict, double boundary_th,
         const std::vector<std::string>& buckets, const std::vector<std::string>& event_keywords,
         bool per_frame, bool timing) {
        EvalConfig config;
        config.split = split;
        config.threads = threads;
        config.allow_missing = allow_missing;
        config.strict = strict;
        config.boundary_th = boundary_th;
        config.buckets = parse_buckets(buckets);
        config.event_keywords = event_keywords;
        config.include_per_frame = per_frame;
        config.include_timing = timing;
        nlohmann::json report;
        {
          py::gil_scoped_release release;
          report = report_to_json(evaluate_run(load_manifest(gt_path), pred_dir, config));
        }
        return to_python(report);
      },
      py::arg("gt"), py::arg("pred"), py::arg("split") = "", py::arg("threads") = 0,
      py::arg("allow_missing") = false, py::arg("strict") = false, py::arg("boundary_th") = 0.008,
      py::arg("buckets") = std::vector<std::string>{},
      py::arg("event_keywords") = std::vector<std::string>{}, py::arg("per_frame") = false,
      py::arg("timing") = false,
      "Evaluates a prediction directory against a manifest; returns the JSON report as a dict.");

  m.def(
      "dataset_stats",
      [](const std::string& gt_path, double bin_width) {
        nlohmann::json stats;
        {
          py::gil_scoped_release release;
          stats = stats_to_json(compute_statistics(load_manifest(gt_path), {bin_width}));
        }
        return to_python(stats);
      },
      py::arg("gt"), py::arg("bin_width") = 10.0);

  m.def(
      "validate_manifest",
      [](const std::string& gt_path) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate_manifest(read_json_file(gt_path))) out.emplace_back(v.pointer, v.message);
        return out;
      },
      py::arg("gt"), "List of (json_pointer, message) schema violations.");

  m.def(
      "estimate_motion",
      [](const U8Array& cur, const U8Array& prev, int block, int search) {
        if (cur.ndim() != 2 || prev.ndim() != 2) throw InvalidArgument("frames must be 2-D");
        const auto to_frame = [](const U8Array& a) {
          const auto h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
          return LumaFrame(h, w, std::vector<std::uint8_t>(a.data(), a.data() + std::size_t(h) * w));
        };
        const auto c = to_frame(cur), p = to_frame(prev);
        MotionVectorField field;
        {
          py::gil_scoped_release release;
          field = estimate_motion(c, p, {block, search});
        }
        return field_array(field);
      },
      py::arg("cur"), py::arg("prev"), py::arg("block") = 16, py::arg("search") = 8,
      "(rows, cols, 2) int32 array of (i, j) block displacements.");

  m.def(
      "decompose",
      [](const U8Array& frames, int gop, int block, int search, int threads) {
        const auto luma = frames_from_array(frames);
        std::vector<ClipDecomposition> clips;
        {
          py::gil_scoped_release release;
          clips = decompose(luma, gop, {block, search}, threads);
        }
        py::list out;
        for (const auto& clip : clips) {
          py::list fields;
          for (const auto& f : clip.motion_fields) fields.append(field_array(f));
          py::dict d;
          d["keyframe"] = clip.keyframe_index;
          d["fields"] = fields;
          out.append(d);
        }
        return out;
      },
      py::arg("frames"), py::arg("gop") = kMaxClipLength, py::arg("block") = 16,
      py::arg("search") = 8, py::arg("threads") = 1,
      "Splits a (T, H, W) uint8 luma video into keyframe clips with motion fields.");
}
