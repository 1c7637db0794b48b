#include "qfan/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qfan/errors.hpp"
#include "qfan/json_io.hpp"
#include "qfan/svg.hpp"

namespace qfan {

namespace {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return j;
}

// "file.json" or "file.json#name" (object inside a document)
Json load_object(const std::string& spec) {
  auto hash = spec.find('#');
  if (hash == std::string::npos) return load_json_file(spec);
  Json doc = load_json_file(spec.substr(0, hash));
  Document d = document_from_json(doc);
  const Json* obj = d.find(spec.substr(hash + 1));
  if (!obj) fail(ErrorCode::ParseError, "no object named " + spec.substr(hash + 1));
  return *obj;
}

Json parse_inline(const std::string& text) {
  // accept a file path or inline JSON text
  if (!text.empty() && text.front() != '[' && text.front() != '{' && text.front() != '"') {
    std::ifstream probe(text);
    if (probe.good()) return load_json_file(text);
  }
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed inline JSON: ") + e.what());
  }
}

void emit(std::ostream& out, const Json& j, const std::string& out_path) {
  std::string text = to_pretty(j);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::ParseError, "cannot write " + out_path);
    f << text;
    out << Json{{"written", out_path}}.dump() << "\n";
  } else {
    out << text;
  }
}

void emit_text(std::ostream& out, const std::string& text, const std::string& out_path) {
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::ParseError, "cannot write " + out_path);
    f << text;
    out << Json{{"written", out_path}}.dump() << "\n";
  } else {
    out << text;
  }
}

IndexSet parse_center(const std::string& text) {
  IndexSet out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(std::stoi(tok) - 1);
  return out;
}

std::vector<Scalar> parse_weights(const std::string& text, const FieldPtr& field) {
  Json j = parse_inline(text);
  if (!j.is_array()) fail(ErrorCode::ParseError, "weights must be a JSON array");
  std::vector<Scalar> out;
  for (const auto& w : j) out.push_back(scalar_from_json(w, field));
  return out;
}

FiberTarget parse_target(const std::string& text) {
  if (text == "torus") return FiberTarget::torus();
  if (text == "zero" || text == "0") return FiberTarget::zero();
  // pattern form "(0,E(w))": zero entries vanish, anything else is nonzero
  std::string body = text;
  if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
  IndexSet nonzero;
  std::stringstream ss(body);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',')) {
    if (tok != "0") nonzero.push_back(i);
    ++i;
  }
  if (nonzero.empty()) return FiberTarget::zero();
  if (static_cast<int>(nonzero.size()) == i) return FiberTarget::torus();
  return FiberTarget::mixed(nonzero);
}

int report_exit(std::ostream& out, const ValidationReport& r, Json extra = Json::object()) {
  Json j = report_to_json(r);
  for (auto& [k, v] : extra.items()) j[k] = v;
  out << to_pretty(j);
  return r.ok() ? 0 : 2;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"exact quantum-fan toolkit"};
  app.require_subcommand(1);

  std::string fan_path, fan2_path, morphism_path, polytope_path, cob_path, doc_path;
  std::string out_path, center_text, weight_text, matrix_text, target_text = "zero";
  std::string axis_text, t_text = "0", alpha_text, columns_text, field_text;
  bool natural = false, extend = false;
  int p_facet = 0, q_facet = 0, end = 0, chart = 1, torus_rank = 0;

  auto* validate = app.add_subcommand("validate", "validate an object");
  validate->add_option("--fan", fan_path);
  validate->add_option("--morphism", morphism_path);
  validate->add_option("--birational", morphism_path);
  validate->add_option("--cobordism", cob_path);
  validate->add_option("--polytope", polytope_path);
  validate->add_option("--doc", doc_path);

  auto* blowup = app.add_subcommand("blowup", "weighted blow-up of a fan");
  blowup->add_option("--fan", fan_path)->required();
  blowup->add_option("--center", center_text)->required();
  blowup->add_option("--weight", weight_text)->required();
  blowup->add_flag("--natural", natural);
  blowup->add_flag("--extend", extend);
  blowup->add_option("--out", out_path);

  auto* fiber = app.add_subcommand("fiber", "fiber strata of a monomial map");
  fiber->add_option("--matrix", matrix_text)->required();
  fiber->add_option("--target", target_text);

  auto* gale = app.add_subcommand("gale", "Gale transform of a calibration");
  gale->add_option("--fan", fan_path)->required();

  auto* sdelta = app.add_subcommand("sdelta", "coordinate patterns of the quotient chart");
  sdelta->add_option("--fan", fan_path)->required();

  auto* zigzag = app.add_subcommand("zigzag", "blow-up/blow-down decomposition (d = 2)");
  zigzag->add_option("--fan1", fan_path);
  zigzag->add_option("--fan2", fan2_path);
  zigzag->add_option("--rationalize", doc_path);

  auto* poly = app.add_subcommand("polytope", "polytope operations");
  poly->require_subcommand(1);
  auto* pnf = poly->add_subcommand("normalfan", "normal fan of a polytope");
  pnf->add_option("--polytope", polytope_path)->required();
  pnf->add_option("--out", out_path);
  auto* pcob = poly->add_subcommand("cobordism", "classify a polytope cobordism");
  pcob->add_option("--polytope", polytope_path)->required();
  pcob->add_option("--p", p_facet)->required();
  pcob->add_option("--q", q_facet)->required();
  pcob->add_option("--surgery-torus", torus_rank);
  auto* pslice = poly->add_subcommand("slice", "exact hyperplane slice");
  pslice->add_option("--polytope", polytope_path)->required();
  pslice->add_option("--axis", axis_text)->required();
  pslice->add_option("--t", t_text)->required();
  pslice->add_option("--out", out_path);
  auto* plvm = poly->add_subcommand("lvm", "admissibility and the quotient polytope");
  plvm->add_option("--matrix", matrix_text)->required();
  plvm->add_option("--field", field_text);
  plvm->add_option("--out", out_path);

  auto* cob = app.add_subcommand("cobordism", "fan cobordism operations");
  cob->require_subcommand(1);
  auto* cval = cob->add_subcommand("validate", "check the cobordism axioms");
  cval->add_option("--in", cob_path)->required();
  auto* cidx = cob->add_subcommand("index", "the (a, b) index");
  cidx->add_option("--in", cob_path)->required();
  auto* ccat = cob->add_subcommand("catastrophe", "the common coarsening");
  ccat->add_option("--in", cob_path)->required();
  ccat->add_option("--out", out_path);
  auto* ctra = cob->add_subcommand("transition", "star subdivision of the merged cone");
  ctra->add_option("--in", cob_path)->required();
  ctra->add_option("--alpha", alpha_text)->required();
  ctra->add_option("--out", out_path);
  auto* csli = cob->add_subcommand("slice", "the slice family member at t");
  csli->add_option("--in", cob_path)->required();
  csli->add_option("--t", t_text)->required();
  csli->add_option("--out", out_path);
  auto* cdef = cob->add_subcommand("deform", "deform one end's calibration");
  cdef->add_option("--in", cob_path)->required();
  cdef->add_option("--columns", columns_text)->required();
  cdef->add_option("--end", end);
  cdef->add_option("--out", out_path);
  auto* cbld = cob->add_subcommand("build-blowup", "the alpha-blow-up cobordism");
  cbld->add_option("--fan", fan_path)->required();
  cbld->add_option("--center", center_text)->required();
  cbld->add_option("--weight", weight_text)->required();
  cbld->add_flag("--extend", extend);
  cbld->add_option("--out", out_path);

  auto* render = app.add_subcommand("render", "deterministic SVG output");
  render->add_option("--fan", fan_path);
  render->add_option("--polytope", polytope_path);
  render->add_option("--out", out_path);

  auto* reduced = app.add_subcommand("reduced", "fiber reducedness criteria");
  reduced->add_option("--weights", weight_text)->required();
  reduced->add_option("--chart", chart);
  reduced->add_option("--support", center_text);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);

  if (*validate) {
    if (!fan_path.empty()) {
      QuantumFan fan = fan_from_json(load_object(fan_path));
      return report_exit(out, validate_fan(fan));
    }
    if (!morphism_path.empty()) {
      Json j = load_object(morphism_path);
      std::string type = j.contains("type") ? j.at("type").get<std::string>() : "morphism";
      if (type == "birational_morphism") {
        auto val = validate_birational(birational_from_json(j));
        return report_exit(out, val.report, Json{{"witness", witness_to_json(val.witness)}});
      }
      return report_exit(out, validate_morphism(morphism_from_json(j)));
    }
    if (!cob_path.empty())
      return report_exit(out, validate_cobordism(cobordism_from_json(load_object(cob_path))));
    if (!polytope_path.empty()) {
      Polytope p = polytope_from_json(load_object(polytope_path));
      Json extra{{"vertices", static_cast<int>(p.vertices().size())},
                 {"facets", static_cast<int>(p.facets().size())},
                 {"dim", p.dim()},
                 {"simple", p.is_simple()}};
      return report_exit(out, ValidationReport{}, extra);
    }
    if (!doc_path.empty()) {
      Document d = document_from_json(load_json_file(doc_path));
      (void)document_save(d);  // throws on the first invalid object
      out << to_pretty(Json{{"valid", true},
                            {"objects", static_cast<int>(d.objects.size())}});
      return 0;
    }
    fail(ErrorCode::ParseError, "validate needs an object option");
  }

  if (*blowup) {
    QuantumFan fan = fan_from_json(load_object(fan_path));
    const FieldPtr& f = fan.cal().field();
    BlowupSpec spec =
        make_blowup_spec(fan, parse_center(center_text), parse_weights(weight_text, f), extend);
    if (natural) {
      FanMorphism m = natural_blowup(spec);
      auto rep = validate_morphism(m);
      Json j = morphism_to_json(m);
      j["report"] = report_to_json(rep);
      emit(out, j, out_path);
      return rep.ok() ? 0 : 2;
    }
    BirationalFanMorphism b = irrational_blowup(spec);
    auto val = validate_birational(b);
    Json j;
    j["fan"] = fan_to_json(b.source);
    j["morphism"] = birational_to_json(b);
    j["witness"] = witness_to_json(val.witness);
    j["report"] = report_to_json(val.report);
    if (!out_path.empty()) {
      // --out receives the blown-up fan itself, ready for further verbs
      emit(out, j["fan"], out_path);
    } else {
      out << to_pretty(j);
    }
    return val.report.ok() ? 0 : 2;
  }

  if (*fiber) {
    auto f = RealField::rationals();
    ExactMatrix m = matrix_from_json(parse_inline(matrix_text), f);
    auto strata = fiber_strata(MonomialMap{m}, parse_target(target_text));
    Json js = Json::array();
    for (const auto& s : strata) js.push_back(stratum_to_json(s));
    out << to_pretty(Json{{"strata", js}});
    return 0;
  }

  if (*gale) {
    QuantumFan fan = fan_from_json(load_object(fan_path));
    ExactMatrix k = gale_transform(fan.cal());
    out << to_pretty(Json{{"k", matrix_to_json(k)},
                          {"rank", k.cols() == 0 ? 0 : k.rank()}});
    return 0;
  }

  if (*sdelta) {
    QuantumFan fan = fan_from_json(load_object(fan_path));
    Json js = Json::array();
    for (const auto& p : s_delta(fan))
      js.push_back(Json{{"zero_allowed", indexset_to_json(p.zero_allowed)},
                        {"nonzero_required", indexset_to_json(p.nonzero_required)}});
    out << to_pretty(Json{{"patterns", js}});
    return 0;
  }

  if (*zigzag) {
    if (!doc_path.empty()) {  // --rationalize FAN
      QuantumFan fan = fan_from_json(load_object(doc_path));
      auto approx = rational_approximation(fan);
      Json j;
      j["denominator"] = approx.denominator.str();
      j["fan"] = fan_to_json(approx.fan);
      emit(out, j, out_path);
      return 0;
    }
    if (fan_path.empty() || fan2_path.empty())
      fail(ErrorCode::ParseError, "zigzag needs --fan1 and --fan2 (or --rationalize)");
    QuantumFan f1 = fan_from_json(load_object(fan_path));
    QuantumFan f2 = fan_from_json(load_object(fan2_path), f1.cal().field());
    ZigzagResult z = zigzag_dim2(f1, f2);
    Json steps = Json::array();
    for (const auto& s : z.steps) {
      Json sj;
      sj["action"] = s.is_blowup ? "blowup" : "blowdown";
      sj["ray"] = s.ray + 1;
      if (!s.weights.empty()) {
        Json w = Json::array();
        for (const auto& x : s.weights) w.push_back(scalar_to_json(x));
        sj["weights"] = w;
      }
      sj["rays_after"] = indexset_to_json(s.after.ray_indices());
      steps.push_back(sj);
    }
    Json j;
    j["start"] = fan_to_json(z.start);
    j["steps"] = steps;
    j["finish"] = fan_to_json(z.finish());
    out << to_pretty(j);
    return 0;
  }

  if (*poly) {
    if (*pnf) {
      Polytope p = polytope_from_json(load_object(polytope_path));
      QuantumFan nf = normal_fan(p);
      Json j = fan_to_json(nf);
      j["report"] = report_to_json(validate_fan(nf));
      emit(out, j, out_path);
      return 0;
    }
    if (*pcob) {
      Polytope w = polytope_from_json(load_object(polytope_path));
      auto cb = classify_cobordism(w, p_facet - 1, q_facet - 1);
      Json j;
      j["kind"] = cb.kind == CobordismKind::Trivial
                      ? "trivial"
                      : (cb.kind == CobordismKind::Elementary ? "elementary" : "composite");
      j["interior_vertices"] = indexset_to_json(cb.interior_vertices);
      if (cb.kind == CobordismKind::Elementary) {
        auto [a, b] = flip_index(cb);
        j["index"] = Json{{"a", a}, {"b", b}};
        auto s = surgery_descriptor(cb, torus_rank);
        j["surgery"] = Json{{"removed", s.removed}, {"glued", s.glued}};
      }
      out << to_pretty(j);
      return 0;
    }
    if (*pslice) {
      Polytope w = polytope_from_json(load_object(polytope_path));
      const FieldPtr& f = w.field();
      Json axis_json = parse_inline(axis_text);
      Vec axis;
      for (const auto& a : axis_json) axis.push_back(scalar_from_json(a, f));
      Polytope s = slice(w, axis, f->from_rat(rat_from_string(t_text)));
      Json j = polytope_to_json(s);
      j["simple"] = s.is_simple();
      emit(out, j, out_path);
      return 0;
    }
    if (*plvm) {
      FieldPtr f = field_text.empty() ? RealField::rationals()
                                      : field_from_json(parse_inline(field_text));
      ExactMatrix a = matrix_from_json(parse_inline(matrix_text), f);
      auto rep = lvm_admissible(a);
      Json j;
      j["siegel"] = rep.siegel;
      j["weak_hyperbolic"] = rep.weak_hyperbolic;
      if (rep.violating_subset) j["violating_subset"] = indexset_to_json(*rep.violating_subset);
      if (rep.admissible()) {
        Polytope p = lvm_polytope(a);
        Json pj = polytope_to_json(p);
        pj["dim"] = p.dim();
        pj["simple"] = p.is_simple();
        j["polytope"] = pj;
        emit(out, j, out_path);
        return 0;
      }
      out << to_pretty(j);
      return 2;
    }
  }

  if (*cob) {
    if (*cbld) {
      QuantumFan fan = fan_from_json(load_object(fan_path));
      const FieldPtr& f = fan.cal().field();
      FanCobordism c = blowup_cobordism(fan, parse_center(center_text),
                                        parse_weights(weight_text, f), extend);
      Json j = cobordism_to_json(c);
      j["report"] = report_to_json(validate_cobordism(c));
      auto [a, b] = cobordism_index(c);
      j["index"] = Json{{"a", a}, {"b", b}};
      emit(out, j, out_path);
      return 0;
    }
    FanCobordism c = cobordism_from_json(load_object(cob_path));
    if (*cval) return report_exit(out, validate_cobordism(c));
    if (*cidx) {
      auto [a, b] = cobordism_index(c);
      out << to_pretty(Json{{"a", a}, {"b", b}});
      return 0;
    }
    if (*ccat) {
      QuantumFan cat = catastrophe_fan(c);
      Json j = fan_to_json(cat);
      j["simplicial"] = cat.is_simplicial();
      emit(out, j, out_path);
      return 0;
    }
    if (*ctra) {
      const FieldPtr& f = c.total.cal().field();
      Json aj = parse_inline(alpha_text);
      Vec alpha;
      for (const auto& a : aj) alpha.push_back(scalar_from_json(a, f));
      TransitionDiamond d = transition_fan(c, alpha);
      Json j;
      j["transition"] = fan_to_json(d.transition);
      j["catastrophe"] = fan_to_json(d.catastrophe);
      j["edges_valid"] = d.to_end0.validation.report.ok() && d.to_end1.validation.report.ok() &&
                         d.end0_down.validation.report.ok() &&
                         d.end1_down.validation.report.ok();
      emit(out, j, out_path);
      return 0;
    }
    if (*csli) {
      const FieldPtr& f = c.total.cal().field();
      QuantumFan s = slice_family(c, f->from_rat(rat_from_string(t_text)));
      emit(out, fan_to_json(s), out_path);
      return 0;
    }
    if (*cdef) {
      const FieldPtr& f = c.total.cal().field();
      const Calibration& old =
          end == 0 ? c.proj0.target.cal() : c.proj1.target.cal();
      ExactMatrix cols = matrix_from_json(parse_inline(columns_text), f);
      Calibration h_new{cols, old.virtuals};
      FanCobordism d = deform_cobordism(c, h_new, end);
      Json j = cobordism_to_json(d);
      j["distance_sq"] =
          scalar_to_json(frobenius_distance_sq(d.total.cal(), c.total.cal()));
      emit(out, j, out_path);
      return 0;
    }
  }

  if (*render) {
    std::string svg;
    if (!fan_path.empty())
      svg = render_fan_svg(fan_from_json(load_object(fan_path)));
    else if (!polytope_path.empty())
      svg = render_polytope_svg(polytope_from_json(load_object(polytope_path)));
    else
      fail(ErrorCode::ParseError, "render needs --fan or --polytope");
    emit_text(out, svg, out_path);
    return 0;
  }

  if (*reduced) {
    Json wj = parse_inline(weight_text);
    std::vector<Int> weights;
    for (const auto& w : wj) weights.push_back(Int(rat_from_json(w).str()));
    IndexSet J;
    if (!center_text.empty()) J = sorted_set(parse_center(center_text));
    auto rep = fiber_reduced(weights, chart - 1, J);
    out << to_pretty(Json{{"reduced", rep.reduced()},
                          {"special_cases", rep.special_cases},
                          {"general_criterion", rep.general_criterion},
                          {"readings_agree", rep.agree},
                          {"all_fibers_reduced", blowup_fibers_reduced(weights)}});
    return 0;
  }
  fail(ErrorCode::ParseError, "unknown command");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out);
  } catch (const CLI::CallForHelp&) {
    out << "qfan <validate|blowup|fiber|gale|sdelta|zigzag|polytope|cobordism|render|reduced>\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << to_pretty(Json{{"code", "ParseError"}, {"message", e.what()}});
    return 1;
  } catch (const Error& e) {
    Json j{{"code", e.code_name()}, {"message", e.what()}};
    out << to_pretty(j);
    return e.code() == ErrorCode::ParseError ? 1 : 2;
  } catch (const std::exception& e) {
    err << to_pretty(Json{{"code", "InternalError"}, {"message", e.what()}});
    return 1;
  }
}

}  // namespace qfan
