#include "qfan/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfan/cone_geometry.hpp"
#include "qfan/errors.hpp"

namespace qfan {

namespace {

Vec homogenize(const Vec& x, const Scalar& last) {
  Vec h = x;
  h.push_back(last);
  return h;
}

}  // namespace

void Polytope::finish() {
  // vertex-facet incidences
  vertex_facets_.clear();
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    IndexSet fs;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      Scalar val = vec_dot(facets_[f].normal, vertices_[v]) + facets_[f].offset;
      if (val.is_zero()) fs.push_back(static_cast<int>(f));
    }
    vertex_facets_.push_back(fs);
  }
  // edges by the combinatorial smallest-face test
  edges_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      IndexSet common;
      std::set_intersection(vertex_facets_[i].begin(), vertex_facets_[i].end(),
                            vertex_facets_[j].begin(), vertex_facets_[j].end(),
                            std::back_inserter(common));
      int on_all = 0;
      for (std::size_t k = 0; k < vertices_.size(); ++k) {
        bool tight = true;
        for (int f : common)
          if (!(vec_dot(facets_[static_cast<std::size_t>(f)].normal, vertices_[k]) +
                facets_[static_cast<std::size_t>(f)].offset)
                   .is_zero())
            tight = false;
        if (tight) ++on_all;
      }
      if (on_all == 2) edges_.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
}

Polytope Polytope::from_vertices(const std::vector<Vec>& points, const FieldPtr& field) {
  if (points.empty()) fail(ErrorCode::EmptySlice, "polytope needs at least one point");
  int dim = static_cast<int>(points[0].size());
  std::vector<Vec> rays;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim)
      fail(ErrorCode::DimensionMismatch, "inconsistent point dimensions");
    rays.push_back(homogenize(p, field->one()));
  }
  ConeGeom cone = ConeGeom::from_generators(rays, dim + 1, field);
  Polytope out;
  out.ambient_ = dim;
  out.field_ = field;
  for (const auto& r : cone.extreme_rays()) {
    const Scalar& t = r[static_cast<std::size_t>(dim)];
    // extreme rays of a cone over height-1 points all have positive height
    Vec v;
    for (int i = 0; i < dim; ++i) v.push_back(r[static_cast<std::size_t>(i)] / t);
    out.vertices_.push_back(std::move(v));
  }
  std::sort(out.vertices_.begin(), out.vertices_.end(),
            [](const Vec& a, const Vec& b) { return vec_lex_compare(a, b) < 0; });
  for (const auto& e : cone.hrep().equalities)
    out.hull_.push_back(HullEquality{Vec(e.begin(), e.end() - 1), e.back()});
  for (const auto& n : cone.hrep().normals) {
    Vec a(n.begin(), n.end() - 1);
    if (vec_is_zero(a)) continue;  // the trivial height inequality t >= 0
    out.facets_.push_back(Facet{a, n.back()});
  }
  out.dim_ = dim - static_cast<int>(out.hull_.size());
  out.finish();
  return out;
}

Polytope Polytope::from_constraints(const std::vector<HullEquality>& equalities,
                                    const std::vector<Facet>& inequalities, int dim,
                                    const FieldPtr& field) {
  HRep h;
  for (const auto& e : equalities) h.equalities.push_back(homogenize(e.normal, e.offset));
  for (const auto& f : inequalities) h.normals.push_back(homogenize(f.normal, f.offset));
  {
    Vec t(static_cast<std::size_t>(dim + 1), field->zero());
    t[static_cast<std::size_t>(dim)] = field->one();
    h.normals.push_back(std::move(t));
  }
  VRep v = dual_description(h, dim + 1, field);
  if (!v.lineality.empty()) fail(ErrorCode::NotValid, "constraint polytope is unbounded");
  std::vector<Vec> pts;
  for (const auto& r : v.rays) {
    const Scalar& t = r[static_cast<std::size_t>(dim)];
    if (t.sign() <= 0) fail(ErrorCode::NotValid, "constraint polytope is unbounded");
    Vec x;
    for (int i = 0; i < dim; ++i) x.push_back(r[static_cast<std::size_t>(i)] / t);
    pts.push_back(std::move(x));
  }
  if (pts.empty()) fail(ErrorCode::EmptySlice, "constraint polytope is empty");
  return from_vertices(pts, field);
}

bool Polytope::vertex_on_facet(int v, int f) const {
  return std::binary_search(vertex_facets_[static_cast<std::size_t>(v)].begin(),
                            vertex_facets_[static_cast<std::size_t>(v)].end(), f);
}

bool Polytope::is_simple() const {
  for (const auto& fs : vertex_facets_)
    if (static_cast<int>(fs.size()) != dim_) return false;
  return true;
}

std::vector<int> Polytope::neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  return out;
}

int find_facet(const Polytope& p, const Vec& inner_normal, const Scalar& offset) {
  for (std::size_t f = 0; f < p.facets().size(); ++f) {
    Vec cand = p.facets()[f].normal;
    cand.push_back(p.facets()[f].offset);
    Vec ref = inner_normal;
    ref.push_back(offset);
    if (vec_positive_multiple(cand, ref)) return static_cast<int>(f);
  }
  return -1;
}

QuantumFan normal_fan(const Polytope& p) {
  if (!p.hull_equalities().empty() || p.vertices().size() < 2)
    fail(ErrorCode::DegeneratePolytope, "normal fan needs a full-dimensional polytope");
  std::vector<Vec> cols;
  for (const auto& f : p.facets()) cols.push_back(f.normal);
  Calibration cal{ExactMatrix::from_columns(cols), {}};
  std::vector<IndexSet> cones;
  for (std::size_t v = 0; v < p.vertices().size(); ++v)
    cones.push_back(p.vertex_facets()[v]);
  std::vector<int> gens;
  for (int j = 0; j < cal.n(); ++j) gens.push_back(j);
  return QuantumFan(cal, cones, gens);
}

// ---------------------------------------------------------------------------

PolytopeCobordism classify_cobordism(const Polytope& w, int p_facet, int q_facet) {
  int nf = static_cast<int>(w.facets().size());
  if (p_facet < 0 || p_facet >= nf || q_facet < 0 || q_facet >= nf || p_facet == q_facet)
    fail(ErrorCode::NotAFacet, "cobordism ends must be two distinct facets");
  PolytopeCobordism cob{w, p_facet, q_facet, {}, CobordismKind::Trivial};
  for (std::size_t v = 0; v < w.vertices().size(); ++v) {
    bool on_p = w.vertex_on_facet(static_cast<int>(v), p_facet);
    bool on_q = w.vertex_on_facet(static_cast<int>(v), q_facet);
    if (on_p && on_q)
      fail(ErrorCode::FacetsIntersect, "the end facets share vertex " + std::to_string(v + 1));
    if (!on_p && !on_q) cob.interior_vertices.push_back(static_cast<int>(v));
  }
  cob.kind = cob.interior_vertices.empty()
                 ? CobordismKind::Trivial
                 : (cob.interior_vertices.size() == 1 ? CobordismKind::Elementary
                                                      : CobordismKind::Composite);
  return cob;
}

std::pair<int, int> flip_index(const PolytopeCobordism& cob) {
  if (cob.kind != CobordismKind::Elementary)
    fail(ErrorCode::NotElementary, "flip index is defined for elementary cobordisms");
  int v = cob.interior_vertices[0];
  int a = 0, b = 0;
  for (int w : cob.total.neighbors(v)) {
    bool on_p = cob.total.vertex_on_facet(w, cob.p_facet);
    bool on_q = cob.total.vertex_on_facet(w, cob.q_facet);
    if (on_p)
      ++a;
    else if (on_q)
      ++b;
    else
      fail(ErrorCode::NotElementary,
           "an edge from the interior vertex reaches neither end facet");
  }
  return {a, b};
}

Polytope slice(const Polytope& w, const Vec& axis, const Scalar& t) {
  bool below = false, above = false;
  std::vector<Scalar> val;
  for (const auto& v : w.vertices()) {
    Scalar s = vec_dot(v, axis) - t;
    below = below || s.sign() < 0;
    above = above || s.sign() > 0;
    val.push_back(std::move(s));
  }
  if (!below || !above)
    fail(ErrorCode::EmptySlice, "the hyperplane does not meet the interior");
  std::vector<Vec> pts;
  for (std::size_t v = 0; v < w.vertices().size(); ++v)
    if (val[v].is_zero()) pts.push_back(w.vertices()[v]);
  for (const auto& [i, j] : w.edges()) {
    const Scalar& si = val[static_cast<std::size_t>(i)];
    const Scalar& sj = val[static_cast<std::size_t>(j)];
    if (si.sign() * sj.sign() >= 0) continue;
    // exact crossing: x = vi + si/(si - sj) (vj - vi)
    Scalar lambda = si / (si - sj);
    Vec x = vec_add(w.vertices()[static_cast<std::size_t>(i)],
                    vec_scale(lambda, vec_sub(w.vertices()[static_cast<std::size_t>(j)],
                                              w.vertices()[static_cast<std::size_t>(i)])));
    pts.push_back(std::move(x));
  }
  return Polytope::from_vertices(pts, w.field());
}

// ---------------------------------------------------------------------------

namespace {

// exact feasibility of 0 in Conv(columns of a restricted to I)
bool zero_in_convex_hull(const ExactMatrix& a, const IndexSet& subset) {
  const FieldPtr& f = a.field();
  HRep h;
  for (int r = 0; r < a.rows(); ++r) {
    Vec row(subset.size(), f->zero());
    for (std::size_t c = 0; c < subset.size(); ++c) row[c] = a.at(r, subset[c]);
    h.equalities.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < subset.size(); ++c) {
    Vec e(subset.size(), f->zero());
    e[c] = f->one();
    h.normals.push_back(std::move(e));
  }
  VRep v = dual_description(h, static_cast<int>(subset.size()), f);
  return !v.rays.empty() || !v.lineality.empty();
}

}  // namespace

AdmissibilityReport lvm_admissible(const ExactMatrix& a) {
  AdmissibilityReport rep{false, true, std::nullopt};
  IndexSet all;
  for (int j = 0; j < a.cols(); ++j) all.push_back(j);
  rep.siegel = zero_in_convex_hull(a, all);
  int p = a.rows(), n = a.cols();
  for (int size = 1; size <= p && rep.weak_hyperbolic; ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      IndexSet subset(idx.begin(), idx.end());
      if (zero_in_convex_hull(a, subset)) {
        rep.weak_hyperbolic = false;
        rep.violating_subset = subset;
        break;
      }
      int i = size;
      while (i > 0 && idx[static_cast<std::size_t>(i - 1)] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[static_cast<std::size_t>(i - 1)];
      for (int j = i; j < size; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return rep;
}

Polytope lvm_polytope(const ExactMatrix& a) {
  auto rep = lvm_admissible(a);
  if (!rep.admissible())
    fail(ErrorCode::NotAdmissible, rep.siegel ? "weak hyperbolicity fails" : "Siegel fails");
  const FieldPtr& f = a.field();
  int n = a.cols();
  HRep h;
  for (int r = 0; r < a.rows(); ++r) h.equalities.push_back(a.row(r));
  for (int c = 0; c < n; ++c) {
    Vec e(static_cast<std::size_t>(n), f->zero());
    e[static_cast<std::size_t>(c)] = f->one();
    h.normals.push_back(std::move(e));
  }
  VRep v = dual_description(h, n, f);
  std::vector<Vec> verts;
  for (const auto& r : v.rays) {
    Scalar sum = f->zero();
    for (const auto& x : r) sum += x;
    verts.push_back(vec_scale(sum.inverse(), r));
  }
  return Polytope::from_vertices(verts, f);
}

SurgeryDescriptor surgery_descriptor(const PolytopeCobordism& cob, int p) {
  auto [a, b] = flip_index(cob);
  if (a < 1 || b < 1)
    fail(ErrorCode::NotElementary, "surgery needs index entries >= 1");
  auto torus = [&]() {
    std::ostringstream os;
    if (p > 0) os << " x (S^1)^" << p;
    return os.str();
  };
  std::ostringstream removed, glued;
  removed << "S^" << (2 * a - 1) << " x D^" << (2 * b) << torus();
  glued << "D^" << (2 * a) << " x S^" << (2 * b - 1) << torus();
  return SurgeryDescriptor{a, b, p, removed.str(), glued.str()};
}

}  // namespace qfan
