#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfan/cli.hpp"
#include "qfan/errors.hpp"
#include "qfan/json_io.hpp"
#include "qfan/svg.hpp"

namespace py = pybind11;
using namespace qfan;

namespace {

// The module speaks JSON strings; the python package wraps them as dicts.

Json parse(const std::string& text) { return Json::parse(text); }

std::string validate_fan_s(const std::string& fan_json) {
  return to_pretty(report_to_json(validate_fan(fan_from_json(parse(fan_json)))));
}

std::string validate_morphism_s(const std::string& j) {
  return to_pretty(report_to_json(validate_morphism(morphism_from_json(parse(j)))));
}

std::string validate_birational_s(const std::string& j) {
  auto val = validate_birational(birational_from_json(parse(j)));
  Json out = report_to_json(val.report);
  out["witness"] = witness_to_json(val.witness);
  return to_pretty(out);
}

std::string validate_cobordism_s(const std::string& j) {
  return to_pretty(report_to_json(validate_cobordism(cobordism_from_json(parse(j)))));
}

std::string blowup_s(const std::string& fan_json, const std::vector<int>& center_1based,
                     const std::string& weights_json, bool natural, bool extend) {
  QuantumFan fan = fan_from_json(parse(fan_json));
  const FieldPtr& f = fan.cal().field();
  IndexSet center;
  for (int c : center_1based) center.push_back(c - 1);
  std::vector<Scalar> weights;
  for (const auto& w : parse(weights_json)) weights.push_back(scalar_from_json(w, f));
  BlowupSpec spec = make_blowup_spec(fan, center, weights, extend);
  Json out;
  if (natural) {
    FanMorphism m = natural_blowup(spec);
    out["morphism"] = morphism_to_json(m);
    out["report"] = report_to_json(validate_morphism(m));
  } else {
    BirationalFanMorphism b = irrational_blowup(spec);
    auto val = validate_birational(b);
    out["fan"] = fan_to_json(b.source);
    out["morphism"] = birational_to_json(b);
    out["witness"] = witness_to_json(val.witness);
    out["report"] = report_to_json(val.report);
  }
  return to_pretty(out);
}

std::string exceptional_divisor_s(const std::string& fan_json,
                                  const std::vector<int>& center_1based,
                                  const std::string& weights_json, int chart) {
  QuantumFan fan = fan_from_json(parse(fan_json));
  const FieldPtr& f = fan.cal().field();
  IndexSet center;
  for (int c : center_1based) center.push_back(c - 1);
  std::vector<Scalar> weights;
  for (const auto& w : parse(weights_json)) weights.push_back(scalar_from_json(w, f));
  BlowupSpec spec = make_blowup_spec(fan, center, weights);
  return to_pretty(fan_to_json(exceptional_divisor(spec, chart)));
}

std::string fiber_strata_s(const std::string& matrix_json, const std::string& target) {
  auto f = RealField::rationals();
  ExactMatrix m = matrix_from_json(parse(matrix_json), f);
  FiberTarget t = FiberTarget::zero();
  if (target == "torus") {
    t = FiberTarget::torus();
  } else if (target != "zero") {
    IndexSet nz;
    for (const auto& v : parse(target)) nz.push_back(v.get<int>() - 1);
    t = FiberTarget::mixed(nz);
  }
  Json out = Json::array();
  for (const auto& s : fiber_strata(MonomialMap{m}, t)) out.push_back(stratum_to_json(s));
  return to_pretty(Json{{"strata", out}});
}

std::string fiber_reduced_s(const std::vector<long>& weights, int chart,
                            const std::vector<int>& support_1based) {
  std::vector<Int> v;
  for (long w : weights) v.push_back(Int(w));
  IndexSet J;
  for (int j : support_1based) J.push_back(j - 1);
  auto rep = fiber_reduced(v, chart - 1, sorted_set(J));
  return to_pretty(Json{{"reduced", rep.reduced()},
                        {"special_cases", rep.special_cases},
                        {"general_criterion", rep.general_criterion},
                        {"readings_agree", rep.agree}});
}

bool blowup_fibers_reduced_s(const std::vector<long>& weights) {
  std::vector<Int> v;
  for (long w : weights) v.push_back(Int(w));
  return blowup_fibers_reduced(v);
}

std::string gale_transform_s(const std::string& fan_json) {
  QuantumFan fan = fan_from_json(parse(fan_json));
  ExactMatrix k = gale_transform(fan.cal());
  return to_pretty(Json{{"k", matrix_to_json(k)}, {"rank", k.cols() == 0 ? 0 : k.rank()}});
}

std::string s_delta_s(const std::string& fan_json) {
  QuantumFan fan = fan_from_json(parse(fan_json));
  Json out = Json::array();
  for (const auto& p : s_delta(fan))
    out.push_back(Json{{"zero_allowed", indexset_to_json(p.zero_allowed)},
                       {"nonzero_required", indexset_to_json(p.nonzero_required)}});
  return to_pretty(Json{{"patterns", out}});
}

std::string zigzag_s(const std::string& fan1_json, const std::string& fan2_json) {
  QuantumFan f1 = fan_from_json(parse(fan1_json));
  QuantumFan f2 = fan_from_json(parse(fan2_json), f1.cal().field());
  ZigzagResult z = zigzag_dim2(f1, f2);
  Json steps = Json::array();
  for (const auto& s : z.steps) {
    Json sj;
    sj["action"] = s.is_blowup ? "blowup" : "blowdown";
    sj["ray"] = s.ray + 1;
    steps.push_back(sj);
  }
  return to_pretty(Json{{"start", fan_to_json(z.start)},
                        {"steps", steps},
                        {"finish", fan_to_json(z.finish())}});
}

std::string rational_approximation_s(const std::string& fan_json) {
  auto out = rational_approximation(fan_from_json(parse(fan_json)));
  return to_pretty(
      Json{{"denominator", out.denominator.str()}, {"fan", fan_to_json(out.fan)}});
}

std::string normal_fan_s(const std::string& polytope_json) {
  return to_pretty(fan_to_json(normal_fan(polytope_from_json(parse(polytope_json)))));
}

std::string lvm_s(const std::string& matrix_json) {
  auto f = RealField::rationals();
  ExactMatrix a = matrix_from_json(parse(matrix_json), f);
  auto rep = lvm_admissible(a);
  Json out;
  out["siegel"] = rep.siegel;
  out["weak_hyperbolic"] = rep.weak_hyperbolic;
  if (rep.violating_subset) out["violating_subset"] = indexset_to_json(*rep.violating_subset);
  if (rep.admissible()) {
    Polytope p = lvm_polytope(a);
    Json pj = polytope_to_json(p);
    pj["dim"] = p.dim();
    pj["simple"] = p.is_simple();
    out["polytope"] = pj;
  }
  return to_pretty(out);
}

std::string polytope_slice_s(const std::string& polytope_json, const std::string& axis_json,
                             const std::string& t) {
  Polytope w = polytope_from_json(parse(polytope_json));
  Vec axis;
  for (const auto& a : parse(axis_json)) axis.push_back(scalar_from_json(a, w.field()));
  Polytope s = slice(w, axis, w.field()->from_rat(rat_from_string(t)));
  Json j = polytope_to_json(s);
  j["simple"] = s.is_simple();
  return to_pretty(j);
}

std::string classify_cobordism_s(const std::string& polytope_json, int p1, int q1) {
  Polytope w = polytope_from_json(parse(polytope_json));
  auto cb = classify_cobordism(w, p1 - 1, q1 - 1);
  Json j;
  j["kind"] = cb.kind == CobordismKind::Trivial
                  ? "trivial"
                  : (cb.kind == CobordismKind::Elementary ? "elementary" : "composite");
  j["interior_vertices"] = indexset_to_json(cb.interior_vertices);
  if (cb.kind == CobordismKind::Elementary) {
    auto [a, b] = flip_index(cb);
    j["index"] = Json{{"a", a}, {"b", b}};
  }
  return to_pretty(j);
}

std::string blowup_cobordism_s(const std::string& fan_json,
                               const std::vector<int>& center_1based,
                               const std::string& weights_json, bool extend) {
  QuantumFan fan = fan_from_json(parse(fan_json));
  const FieldPtr& f = fan.cal().field();
  IndexSet center;
  for (int c : center_1based) center.push_back(c - 1);
  std::vector<Scalar> weights;
  for (const auto& w : parse(weights_json)) weights.push_back(scalar_from_json(w, f));
  FanCobordism c = blowup_cobordism(fan, center, weights, extend);
  Json j = cobordism_to_json(c);
  auto [a, b] = cobordism_index(c);
  j["index"] = Json{{"a", a}, {"b", b}};
  j["report"] = report_to_json(validate_cobordism(c));
  return to_pretty(j);
}

std::string cobordism_index_s(const std::string& cob_json) {
  auto [a, b] = cobordism_index(cobordism_from_json(parse(cob_json)));
  return to_pretty(Json{{"a", a}, {"b", b}});
}

std::string catastrophe_fan_s(const std::string& cob_json) {
  return to_pretty(fan_to_json(catastrophe_fan(cobordism_from_json(parse(cob_json)))));
}

std::string slice_family_s(const std::string& cob_json, const std::string& t) {
  FanCobordism c = cobordism_from_json(parse(cob_json));
  return to_pretty(
      fan_to_json(slice_family(c, c.total.cal().field()->from_rat(rat_from_string(t)))));
}

std::string render_fan_svg_s(const std::string& fan_json) {
  return render_fan_svg(fan_from_json(parse(fan_json)));
}

std::string render_polytope_svg_s(const std::string& polytope_json) {
  return render_polytope_svg(polytope_from_json(parse(polytope_json)));
}

int cli_s(const std::vector<std::string>& args) {
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact quantum-fan toolkit (C++ core)";

  static py::exception<Error> exc(m, "QfanError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(e.code_name()) + ": " + e.what()).c_str());
    }
  });

  m.def("validate_fan", &validate_fan_s, py::arg("fan_json"));
  m.def("validate_morphism", &validate_morphism_s, py::arg("morphism_json"));
  m.def("validate_birational", &validate_birational_s, py::arg("morphism_json"));
  m.def("validate_cobordism", &validate_cobordism_s, py::arg("cobordism_json"));
  m.def("blowup", &blowup_s, py::arg("fan_json"), py::arg("center"), py::arg("weights_json"),
        py::arg("natural") = false, py::arg("extend") = false);
  m.def("exceptional_divisor", &exceptional_divisor_s, py::arg("fan_json"), py::arg("center"),
        py::arg("weights_json"), py::arg("chart") = 0);
  m.def("fiber_strata", &fiber_strata_s, py::arg("matrix_json"), py::arg("target") = "zero");
  m.def("fiber_reduced", &fiber_reduced_s, py::arg("weights"), py::arg("chart") = 1,
        py::arg("support") = std::vector<int>{});
  m.def("blowup_fibers_reduced", &blowup_fibers_reduced_s, py::arg("weights"));
  m.def("gale_transform", &gale_transform_s, py::arg("fan_json"));
  m.def("s_delta", &s_delta_s, py::arg("fan_json"));
  m.def("zigzag", &zigzag_s, py::arg("fan1_json"), py::arg("fan2_json"));
  m.def("rational_approximation", &rational_approximation_s, py::arg("fan_json"));
  m.def("normal_fan", &normal_fan_s, py::arg("polytope_json"));
  m.def("lvm", &lvm_s, py::arg("matrix_json"));
  m.def("polytope_slice", &polytope_slice_s, py::arg("polytope_json"), py::arg("axis_json"),
        py::arg("t"));
  m.def("classify_cobordism", &classify_cobordism_s, py::arg("polytope_json"), py::arg("p"),
        py::arg("q"));
  m.def("blowup_cobordism", &blowup_cobordism_s, py::arg("fan_json"), py::arg("center"),
        py::arg("weights_json"), py::arg("extend") = false);
  m.def("cobordism_index", &cobordism_index_s, py::arg("cobordism_json"));
  m.def("catastrophe_fan", &catastrophe_fan_s, py::arg("cobordism_json"));
  m.def("slice_family", &slice_family_s, py::arg("cobordism_json"), py::arg("t"));
  m.def("render_fan_svg", &render_fan_svg_s, py::arg("fan_json"));
  m.def("render_polytope_svg", &render_polytope_svg_s, py::arg("polytope_json"));
  m.def("cli", &cli_s, py::arg("args"), "run a CLI verb in-process");

#ifdef QFAN_VERSION
  m.attr("__version__") = QFAN_VERSION;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
