#include "qfan/json_io.hpp"

#include "qfan/errors.hpp"

namespace qfan {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json rat_to_json(const Rat& r) { return rat_to_string(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  bad("expected a rational string");
}

Json field_to_json(const RealField& f) {
  Json j;
  Json coeffs = Json::array();
  for (int i = 0; i <= f.minpoly().degree(); ++i)
    coeffs.push_back(rat_to_json(f.minpoly().coeff(i)));
  j["minpoly"] = coeffs;
  auto [lo, hi] = f.interval();
  j["interval"] = Json::array({rat_to_json(lo), rat_to_json(hi)});
  return j;
}

FieldPtr field_from_json(const Json& j) {
  std::vector<Rat> coeffs;
  for (const auto& c : need(j, "minpoly")) coeffs.push_back(rat_from_json(c));
  const Json& iv = need(j, "interval");
  if (!iv.is_array() || iv.size() != 2) bad("interval must be [lo, hi]");
  return RealField::create(Poly(coeffs), rat_from_json(iv[0]), rat_from_json(iv[1]));
}

Json scalar_to_json(const Scalar& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(rat_to_json(c));
  return Json{{"coeffs", coeffs}};
}

Scalar scalar_from_json(const Json& j, const FieldPtr& field) {
  if (j.is_string() || j.is_number_integer()) return field->from_rat(rat_from_json(j));
  if (j.is_object()) {
    std::vector<Rat> coeffs;
    for (const auto& c : need(j, "coeffs")) coeffs.push_back(rat_from_json(c));
    if (static_cast<int>(coeffs.size()) > field->degree())
      bad("scalar has more coefficients than the field degree");
    return field->scalar(std::move(coeffs));
  }
  if (j.is_array()) {  // bare coefficient array shorthand
    std::vector<Rat> coeffs;
    for (const auto& c : j) coeffs.push_back(rat_from_json(c));
    return field->scalar(std::move(coeffs));
  }
  bad("expected a scalar");
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      const Scalar& s = m.at(i, j);
      if (s.is_rational())
        row.push_back(rat_to_json(s.rational_value()));
      else
        row.push_back(scalar_to_json(s));
    }
    rows.push_back(row);
  }
  return rows;
}

ExactMatrix matrix_from_json(const Json& j, const FieldPtr& field) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  ExactMatrix m(rows, cols, field);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols) bad("ragged matrix rows");
    for (int c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(j[r][c], field);
  }
  return m;
}

Json indexset_to_json(const IndexSet& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i + 1);
  return out;
}

IndexSet indexset_from_json(const Json& j) {
  IndexSet out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad("index sets hold integers");
    out.push_back(v.get<int>() - 1);
  }
  return out;
}

Json fan_to_json(const QuantumFan& fan) {
  Json j;
  j["type"] = "fan";
  j["field"] = field_to_json(*fan.cal().field());
  Json cal;
  cal["d"] = fan.cal().d();
  cal["n"] = fan.cal().n();
  Json cols = Json::array();
  for (int c = 0; c < fan.cal().n(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < fan.cal().d(); ++r)
      col.push_back(scalar_to_json(fan.cal().columns.at(r, c)));
    cols.push_back(col);
  }
  cal["columns"] = cols;
  cal["virtuals"] = indexset_to_json(fan.cal().virtuals);
  j["calibration"] = cal;
  j["generator_set"] = indexset_to_json(fan.generators());
  Json cones = Json::array();
  for (const auto& c : fan.max_cones()) cones.push_back(indexset_to_json(c));
  j["cones"] = cones;
  return j;
}

QuantumFan fan_from_json(const Json& j, FieldPtr field) {
  if (!field) field = field_from_json(need(j, "field"));
  const Json& cal = need(j, "calibration");
  int d = need(cal, "d").get<int>();
  int n = need(cal, "n").get<int>();
  const Json& cols = need(cal, "columns");
  if (static_cast<int>(cols.size()) != n) bad("column count differs from n");
  ExactMatrix m(d, n, field);
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(cols[c].size()) != d) bad("column has wrong dimension");
    for (int r = 0; r < d; ++r) m.at(r, c) = scalar_from_json(cols[c][r], field);
  }
  Calibration calib{m, sorted_set(indexset_from_json(need(cal, "virtuals")))};
  std::vector<IndexSet> cones;
  for (const auto& c : need(j, "cones")) cones.push_back(indexset_from_json(c));
  return QuantumFan(calib, cones, indexset_from_json(need(j, "generator_set")));
}

Json morphism_to_json(const FanMorphism& m) {
  Json j;
  j["type"] = "morphism";
  j["L"] = matrix_to_json(m.L);
  j["H"] = matrix_to_json(m.H);
  j["source"] = fan_to_json(m.source);
  j["target"] = fan_to_json(m.target);
  return j;
}

FanMorphism morphism_from_json(const Json& j) {
  QuantumFan source = fan_from_json(need(j, "source"));
  QuantumFan target = fan_from_json(need(j, "target"), source.cal().field());
  ExactMatrix L = matrix_from_json(need(j, "L"), source.cal().field());
  ExactMatrix H = matrix_from_json(need(j, "H"), source.cal().field());
  return FanMorphism{std::move(source), std::move(target), std::move(L), std::move(H)};
}

Json birational_to_json(const BirationalFanMorphism& b) {
  Json j;
  j["type"] = "birational_morphism";
  j["L"] = matrix_to_json(b.L);
  j["H"] = matrix_to_json(b.H);
  j["source"] = fan_to_json(b.source);
  j["target"] = fan_to_json(b.target);
  return j;
}

BirationalFanMorphism birational_from_json(const Json& j) {
  QuantumFan source = fan_from_json(need(j, "source"));
  QuantumFan target = fan_from_json(need(j, "target"), source.cal().field());
  ExactMatrix L = matrix_from_json(need(j, "L"), source.cal().field());
  ExactMatrix H = matrix_from_json(need(j, "H"), source.cal().field());
  return BirationalFanMorphism{std::move(source), std::move(target), std::move(L),
                               std::move(H)};
}

Json polytope_to_json(const Polytope& p) {
  Json j;
  j["type"] = "polytope";
  j["field"] = field_to_json(*p.field());
  Json verts = Json::array();
  for (const auto& v : p.vertices()) {
    Json vert = Json::array();
    for (const auto& s : v) vert.push_back(scalar_to_json(s));
    verts.push_back(vert);
  }
  j["vertices"] = verts;
  return j;
}

Polytope polytope_from_json(const Json& j, FieldPtr field) {
  if (!field) field = field_from_json(need(j, "field"));
  std::vector<Vec> pts;
  for (const auto& v : need(j, "vertices")) {
    Vec x;
    for (const auto& s : v) x.push_back(scalar_from_json(s, field));
    pts.push_back(std::move(x));
  }
  return Polytope::from_vertices(pts, field);
}

Json cobordism_to_json(const FanCobordism& c) {
  Json j;
  j["type"] = "cobordism";
  j["field"] = field_to_json(*c.total.cal().field());
  j["total"] = fan_to_json(c.total);
  Json s0 = Json::array(), s1 = Json::array();
  for (int i : c.sub0) s0.push_back(i + 1);
  for (int i : c.sub1) s1.push_back(i + 1);
  j["sub0"] = s0;
  j["sub1"] = s1;
  auto proj = [&](const CobordismProjection& p) {
    Json pj;
    pj["L"] = matrix_to_json(p.L);
    pj["H"] = matrix_to_json(p.H);
    pj["target"] = fan_to_json(p.target);
    return pj;
  };
  j["proj0"] = proj(c.proj0);
  j["proj1"] = proj(c.proj1);
  return j;
}

FanCobordism cobordism_from_json(const Json& j, FieldPtr field) {
  if (!field) field = field_from_json(need(j, "field"));
  QuantumFan total = fan_from_json(need(j, "total"), field);
  auto subs = [&](const char* key) {
    std::vector<int> out;
    for (const auto& v : need(j, key)) out.push_back(v.get<int>() - 1);
    return out;
  };
  auto proj = [&](const char* key) {
    const Json& pj = need(j, key);
    QuantumFan target = fan_from_json(need(pj, "target"), field);
    return CobordismProjection{matrix_from_json(need(pj, "L"), field),
                               matrix_from_json(need(pj, "H"), field), std::move(target)};
  };
  return FanCobordism{std::move(total), subs("sub0"), subs("sub1"), proj("proj0"),
                      proj("proj1")};
}

Json report_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.ok();
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back(Json{{"code", x.code}, {"message", x.message}});
  j["violations"] = v;
  Json n = Json::array();
  for (const auto& x : r.notes) n.push_back(Json{{"code", x.code}, {"message", x.message}});
  j["notes"] = n;
  return j;
}

Json witness_to_json(const BirationalWitness& w) {
  Json j;
  Json sc = Json::array(), tc = Json::array();
  for (const auto& c : w.source_cones) sc.push_back(indexset_to_json(c));
  for (const auto& c : w.target_cones) tc.push_back(indexset_to_json(c));
  j["source_cones"] = sc;
  j["target_cones"] = tc;
  j["exceptional_source"] = indexset_to_json(w.exceptional_source);
  j["exceptional_target"] = indexset_to_json(w.exceptional_target);
  j["extra_virtual_source"] = indexset_to_json(w.extra_virtual_source);
  j["extra_virtual_target"] = indexset_to_json(w.extra_virtual_target);
  return j;
}

Json stratum_to_json(const FiberStratum& s) {
  Json j;
  j["A"] = indexset_to_json(s.zero_set);
  j["solved"] = indexset_to_json(s.solved_set);
  j["free"] = indexset_to_json(s.free_set);
  j["L_A"] = matrix_to_json(s.solve_matrix);
  j["descriptor"] = s.descriptor;
  return j;
}

const Json* Document::find(const std::string& name) const {
  for (const auto& [n, obj] : objects)
    if (n == name) return &obj;
  return nullptr;
}

Json document_to_json(const Document& d) {
  Json j;
  j["type"] = "document";
  j["field"] = field_to_json(*d.field);
  Json objs = Json::object();
  for (const auto& [name, obj] : d.objects) objs[name] = obj;
  j["objects"] = objs;
  j["provenance"] = d.provenance;
  return j;
}

Document document_from_json(const Json& j) {
  Document d;
  d.field = field_from_json(need(j, "field"));
  for (const auto& [name, obj] : need(j, "objects").items()) d.objects.emplace_back(name, obj);
  if (j.contains("provenance"))
    for (const auto& p : j.at("provenance")) d.provenance.push_back(p.get<std::string>());
  return d;
}

std::string document_save(const Document& d) {
  // every stored object must pass its validator at save time
  for (const auto& [name, obj] : d.objects) {
    std::string type = obj.contains("type") ? obj.at("type").get<std::string>() : "";
    if (type == "fan") {
      QuantumFan fan = fan_from_json(obj, d.field);
      auto rep = validate_fan(fan);
      if (!rep.ok())
        fail(ErrorCode::NotValid, "object \"" + name + "\" fails validation: " +
                                      rep.violations[0].code);
    } else if (type == "morphism") {
      auto rep = validate_morphism(morphism_from_json(obj));
      if (!rep.ok())
        fail(ErrorCode::NotValid, "object \"" + name + "\" fails validation: " +
                                      rep.violations[0].code);
    } else if (type == "birational_morphism") {
      auto val = validate_birational(birational_from_json(obj));
      if (!val.report.ok())
        fail(ErrorCode::NotValid, "object \"" + name + "\" fails validation: " +
                                      val.report.violations[0].code);
    } else if (type == "polytope") {
      (void)polytope_from_json(obj, d.field);  // construction validates
    } else if (type == "cobordism") {
      auto rep = validate_cobordism(cobordism_from_json(obj, d.field));
      if (!rep.ok())
        fail(ErrorCode::NotValid, "object \"" + name + "\" fails validation: " +
                                      rep.violations[0].code);
    }
  }
  return to_pretty(document_to_json(d));
}

std::string to_pretty(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qfan
