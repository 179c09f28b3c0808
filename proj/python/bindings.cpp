#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vvckit/alf.hpp"
#include "vvckit/bench.hpp"
#include "vvckit/dispatch.hpp"
#include "vvckit/interp.hpp"
#include "vvckit/wavefront.hpp"
#include "vvckit/xform.hpp"

namespace py = pybind11;
using namespace vvckit;

namespace {

using U16Array = py::array_t<uint16_t, py::array::c_style | py::array::forcecast>;
using I16Array = py::array_t<int16_t, py::array::c_style | py::array::forcecast>;

Plane to_plane(const U16Array& a, int depth) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D sample array");
  const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
  Plane p(w, h, BitDepth(depth));
  const auto r = a.unchecked<2>();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (r(y, x) > p.depth().max_sample()) throw py::value_error("sample exceeds the bit depth");
      p.at(x, y) = r(y, x);
    }
  return p;
}

U16Array from_plane(const Plane& p) {
  U16Array a({p.height(), p.width()});
  auto w = a.mutable_unchecked<2>();
  for (int y = 0; y < p.height(); ++y)
    for (int x = 0; x < p.width(); ++x) w(y, x) = p.at(x, y);
  return a;
}

KernelTable table_for(const std::string& tier) { return build_registry(parse_tier(tier)); }

XformKind parse_kind(const std::string& s) {
  for (XformKind k : {XformKind::kDct2, XformKind::kDst7, XformKind::kDct8})
    if (s == xform_kind_name(k)) return k;
  throw py::value_error("unknown transform kind " + s);
}

}  // namespace

PYBIND11_MODULE(_vvckit, m) {
  m.doc() = "VVC decoder kernels: interpolation, ALF, inverse transform, wavefront scheduling.";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.attr("__version__") = kToolVersion;

  m.def("available_tiers", [] {
    std::vector<std::string> out;
    for (VariantTier t : detect_capabilities()) out.emplace_back(tier_name(t));
    return out;
  });

  m.def("luma_table", [] {
    std::vector<std::vector<int>> rows;
    for (const auto& r : luma_table_default().rows()) rows.emplace_back(r.begin(), r.end());
    const auto& alt = luma_table_default().alt_half_pel();
    rows.emplace_back(alt.begin(), alt.end());
    return rows;
  }, "The 16 luma rows followed by the alternate half-pel row.");

  m.def(
      "interp_luma",
      [](const U16Array& src, int x, int y, int w, int h, int fx, int fy, bool hpel_alt, int depth,
         const std::string& tier) {
        const Plane p = to_plane(src, depth);
        return from_plane(interp_luma(p, {x, y, w, h}, {fx, fy, hpel_alt}, luma_table_default(), table_for(tier)));
      },
      py::arg("src"), py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"), py::arg("fx"), py::arg("fy"),
      py::arg("hpel_alt") = false, py::arg("depth") = 8, py::arg("tier") = "auto");

  m.def(
      "alf_classify",
      [](const U16Array& src, int x, int y, int depth, const std::string& tier) {
        const AlfClassification c = alf_classify_4x4(to_plane(src, depth), {x, y, 4, 4}, table_for(tier));
        return py::make_tuple(c.class_idx, c.transpose_idx);
      },
      py::arg("src"), py::arg("x"), py::arg("y"), py::arg("depth") = 8, py::arg("tier") = "auto",
      "(class_idx, transpose_idx) of the 4x4 block at (x, y).");

  m.def(
      "alf_filter_plane",
      [](const U16Array& src, uint64_t filter_seed, bool chroma, int depth, const std::string& tier) {
        const Plane p = to_plane(src, depth);
        Plane dst(p.width(), p.height(), p.depth());
        const int ctus = ((p.width() + 127) / 128) * ((p.height() + 127) / 128);
        const std::vector<uint8_t> enable(static_cast<std::size_t>(ctus), 1);
        alf_filter_plane(p, dst, AlfFilterSet::random(filter_seed), chroma ? AlfComponent::kChroma : AlfComponent::kLuma,
                         enable, 128, table_for(tier));
        return from_plane(dst);
      },
      py::arg("src"), py::arg("filter_seed") = 1, py::arg("chroma") = false, py::arg("depth") = 8,
      py::arg("tier") = "auto", "Filters every CTU with a seeded random filter set.");

  m.def(
      "dequant",
      [](const I16Array& levels, int qp) {
        I16Array out(std::vector<py::ssize_t>(levels.shape(), levels.shape() + levels.ndim()));
        dequant_into(levels.data(), static_cast<std::size_t>(levels.size()), qp, out.mutable_data());
        return out;
      },
      py::arg("levels"), py::arg("qp"));

  m.def(
      "inv_transform",
      [](const I16Array& coeffs, const std::string& kind_h, const std::string& kind_v, int depth,
         const std::string& tier) {
        if (coeffs.ndim() != 2) throw py::value_error("expected a 2-D coefficient array");
        CoeffBlock c(static_cast<int>(coeffs.shape(1)), static_cast<int>(coeffs.shape(0)));
        std::copy(coeffs.data(), coeffs.data() + coeffs.size(), c.values.begin());
        const ResidualBlock r = inv_transform_2d(c, parse_kind(kind_h), parse_kind(kind_v), BitDepth(depth),
                                                 table_for(tier));
        I16Array out({r.h, r.w});
        std::copy(r.values.begin(), r.values.end(), out.mutable_data());
        return out;
      },
      py::arg("coeffs"), py::arg("kind_h") = "DCT2", py::arg("kind_v") = "DCT2", py::arg("depth") = 8,
      py::arg("tier") = "auto");

  m.def("wpp_critical_path", [](int rows, int cols) { return critical_path_length(wpp_dependencies(rows, cols)); });

  m.def(
      "bench",
      [](int width, int height, int frames, int depth, uint64_t seed, std::vector<std::string> stages,
         const std::string& tier, int workers) {
        WorkloadSpec spec;
        spec.width = width;
        spec.height = height;
        spec.frames = frames;
        spec.depth = depth;
        spec.seed = seed;
        spec.stages.clear();
        for (const auto& s : stages) {
          const auto st = parse_stage(s);
          if (!st) throw py::value_error("unknown stage " + s);
          spec.stages.push_back(*st);
        }
        spec.validate();
        py::gil_scoped_release release;
        return to_json(run_bench(spec, parse_tier(tier), workers));
      },
      py::arg("width") = 416, py::arg("height") = 240, py::arg("frames") = 1, py::arg("depth") = 8,
      py::arg("seed") = 1, py::arg("stages") = std::vector<std::string>{"iqit", "mc", "alf"},
      py::arg("tier") = "auto", py::arg("workers") = 1, "Runs one workload and returns the JSON report text.");

  m.def(
      "verify",
      [](uint64_t seed, uint64_t trials, std::optional<std::string> inject) {
        std::optional<KernelFamily> fam;
        if (inject) {
          fam = parse_family(*inject);
          if (!fam) throw py::value_error("unknown family " + *inject);
        }
        VerifySummary s;
        {
          py::gil_scoped_release release;
          s = run_verify(seed, trials, fam);
        }
        py::list failed;
        for (const auto& r : s.reports)
          if (!r.ok()) failed.append(r.id.name());
        return py::make_tuple(s.status, failed);
      },
      py::arg("seed") = 1, py::arg("trials") = 100, py::arg("inject") = py::none(),
      "(status, failing kernel ids); status 0 when every variant matches scalar.");
}
