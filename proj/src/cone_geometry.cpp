#include "qfan/cone_geometry.hpp"

#include <algorithm>
#include <set>

#include "qfan/errors.hpp"

namespace qfan {

int vec_lex_compare(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int s = (a[i] - b[i]).sign();
    if (s != 0) return s;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

namespace {

// Basis vectors spanning {x : rows.x = 0}.
std::vector<Vec> kernel_of_rows(const std::vector<Vec>& rows, int dim, const FieldPtr& field) {
  if (rows.empty()) {
    std::vector<Vec> basis;
    for (int j = 0; j < dim; ++j) {
      Vec v(static_cast<std::size_t>(dim), field->zero());
      v[static_cast<std::size_t>(j)] = field->one();
      basis.push_back(std::move(v));
    }
    return basis;
  }
  return ExactMatrix::from_rows(rows).kernel_basis();
}

struct TrackedRay {
  Vec v;                    // coordinates in the working space
  std::vector<bool> tight;  // tight flags over constraint indices 0..m-1
};

// Pointed double description in a space where the constraint matrix has
// trivial kernel: rows a_i, dimension k >= 1, rank(rows) == k.
std::vector<TrackedRay> pointed_dd(const std::vector<Vec>& rows, int k, const FieldPtr& field) {
  const std::size_t m = rows.size();
  // initial simplicial base: k rows of full rank
  std::vector<int> base;
  {
    std::vector<Vec> picked;
    for (std::size_t i = 0; i < m && static_cast<int>(base.size()) < k; ++i) {
      picked.push_back(rows[i]);
      if (ExactMatrix::from_rows(picked).rank() == static_cast<int>(picked.size()))
        base.push_back(static_cast<int>(i));
      else
        picked.pop_back();
    }
    if (static_cast<int>(base.size()) != k)
      fail(ErrorCode::DimensionMismatch, "double description: constraint matrix rank deficit");
  }
  std::vector<Vec> base_rows;
  for (int i : base) base_rows.push_back(rows[static_cast<std::size_t>(i)]);
  ExactMatrix Binv = ExactMatrix::from_rows(base_rows).inverse();

  std::vector<bool> inserted(m, false);
  std::vector<TrackedRay> rays;
  for (int j = 0; j < k; ++j) {
    TrackedRay r;
    r.v = ray_normalize(Binv.col(j));
    r.tight.assign(m, false);
    rays.push_back(std::move(r));
  }
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l)
      rays[static_cast<std::size_t>(j)]
          .tight[static_cast<std::size_t>(base[static_cast<std::size_t>(l)])] = (l != j);
  for (int i : base) inserted[static_cast<std::size_t>(i)] = true;

  auto tight_subset_of = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < m; ++i)
      if (inserted[i] && a[i] && !b[i]) return false;
    return true;
  };

  for (std::size_t c = 0; c < m; ++c) {
    if (inserted[c]) continue;
    const Vec& a = rows[c];
    std::vector<int> sign_of(rays.size());
    std::vector<Scalar> val_of;
    val_of.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      Scalar s = vec_dot(a, rays[i].v);
      sign_of[i] = s.sign();
      val_of.push_back(std::move(s));
    }
    std::vector<TrackedRay> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sign_of[i] >= 0) {
        TrackedRay r = rays[i];
        if (sign_of[i] == 0) r.tight[c] = true;
        next.push_back(std::move(r));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (sign_of[i] <= 0) continue;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (sign_of[j] >= 0) continue;
        // combinatorial adjacency: no third ray's tight set contains the
        // common tight set of i and j
        std::vector<bool> common(m, false);
        for (std::size_t t = 0; t < m; ++t) common[t] = rays[i].tight[t] && rays[j].tight[t];
        bool adjacent = true;
        for (std::size_t r3 = 0; r3 < rays.size() && adjacent; ++r3) {
          if (r3 == i || r3 == j) continue;
          if (tight_subset_of(common, rays[r3].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        TrackedRay nr;
        nr.v = ray_normalize(
            vec_sub(vec_scale(val_of[i], rays[j].v), vec_scale(val_of[j], rays[i].v)));
        nr.tight.assign(m, false);
        for (std::size_t t = 0; t < m; ++t)
          if (inserted[t]) nr.tight[t] = vec_dot(rows[t], nr.v).is_zero();
        nr.tight[c] = true;
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
    inserted[c] = true;
  }
  return rays;
}

}  // namespace

VRep dual_description(const HRep& h, int dim, const FieldPtr& field) {
  VRep out;
  if (dim == 0) return out;
  // 1. subspace satisfying the equalities
  std::vector<Vec> S = kernel_of_rows(h.equalities, dim, field);
  if (S.empty()) return out;
  const int k0 = static_cast<int>(S.size());
  ExactMatrix Smat = ExactMatrix::from_columns(S);
  // 2. inequalities restricted to subspace coordinates
  std::vector<Vec> rows;
  for (const auto& n : h.normals) {
    Vec r(static_cast<std::size_t>(k0), field->zero());
    for (int j = 0; j < k0; ++j)
      r[static_cast<std::size_t>(j)] = vec_dot(n, S[static_cast<std::size_t>(j)]);
    rows.push_back(std::move(r));
  }
  // 3. split off the lineality (kernel of the restricted inequality matrix)
  std::vector<Vec> lin_y = kernel_of_rows(rows, k0, field);
  for (const auto& l : lin_y) out.lineality.push_back(Smat.apply(l));
  if (static_cast<int>(lin_y.size()) == k0) return out;  // whole subspace

  // complement coordinates: non-pivot columns of the lineality row space
  std::vector<int> comp_cols;
  {
    std::vector<bool> pivot(static_cast<std::size_t>(k0), false);
    if (!lin_y.empty()) {
      ExactMatrix L = ExactMatrix::from_rows(lin_y);
      std::vector<Vec> acc;
      for (int c = 0; c < k0; ++c) {
        acc.push_back(L.col(c));
        if (ExactMatrix::from_columns(acc).rank() == static_cast<int>(acc.size()))
          pivot[static_cast<std::size_t>(c)] = true;
        else
          acc.pop_back();
      }
    }
    for (int c = 0; c < k0; ++c)
      if (!pivot[static_cast<std::size_t>(c)]) comp_cols.push_back(c);
  }
  const int k = static_cast<int>(comp_cols.size());
  std::vector<Vec> crows;
  for (const auto& r : rows) {
    Vec cr(static_cast<std::size_t>(k), field->zero());
    for (int j = 0; j < k; ++j)
      cr[static_cast<std::size_t>(j)] =
          r[static_cast<std::size_t>(comp_cols[static_cast<std::size_t>(j)])];
    crows.push_back(std::move(cr));
  }
  auto tracked = pointed_dd(crows, k, field);
  for (const auto& tr : tracked) {
    // lift c-coords -> y-coords -> x-coords
    Vec y(static_cast<std::size_t>(k0), field->zero());
    for (int j = 0; j < k; ++j)
      y[static_cast<std::size_t>(comp_cols[static_cast<std::size_t>(j)])] =
          tr.v[static_cast<std::size_t>(j)];
    out.rays.push_back(ray_normalize(Smat.apply(y)));
  }
  std::sort(out.rays.begin(), out.rays.end(),
            [](const Vec& a, const Vec& b) { return vec_lex_compare(a, b) < 0; });
  return out;
}

HRep facet_description(const std::vector<Vec>& gens, int dim, const FieldPtr& field) {
  HRep polar;
  for (const auto& g : gens)
    if (!vec_is_zero(g)) polar.normals.push_back(g);  // polar cone {y : g.y >= 0}
  VRep v = dual_description(polar, dim, field);
  HRep out;
  out.equalities = v.lineality;  // orthogonal complement of span(gens)
  out.normals = v.rays;
  return out;
}

void ConeGeom::finish(const FieldPtr& field, int dim, VRep v) {
  field_ = field;
  dim_ = dim;
  rays_ = std::move(v.rays);
  lineality_ = std::move(v.lineality);
  pointed_ = lineality_.empty();
  std::vector<Vec> all = rays_;
  for (const auto& l : lineality_) all.push_back(l);
  cone_dim_ = all.empty() ? 0 : ExactMatrix::from_rows(all).rank();
  std::sort(rays_.begin(), rays_.end(),
            [](const Vec& a, const Vec& b) { return vec_lex_compare(a, b) < 0; });
}

ConeGeom ConeGeom::from_generators(const std::vector<Vec>& gens, int dim, const FieldPtr& field) {
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != dim)
      fail(ErrorCode::DimensionMismatch, "generator dimension mismatch");
  ConeGeom c;
  c.hrep_ = facet_description(gens, dim, field);
  // re-extremalize through the H-representation
  VRep v = dual_description(c.hrep_, dim, field);
  c.finish(field, dim, std::move(v));
  return c;
}

ConeGeom ConeGeom::from_hrep(const HRep& h, int dim, const FieldPtr& field) {
  ConeGeom c;
  VRep v = dual_description(h, dim, field);
  // canonical H-rep from the generators (drops redundant constraints)
  std::vector<Vec> gens = v.rays;
  for (const auto& l : v.lineality) {
    gens.push_back(l);
    Vec neg = l;
    for (auto& s : neg) s = -s;
    gens.push_back(std::move(neg));
  }
  c.hrep_ = facet_description(gens, dim, field);
  c.finish(field, dim, std::move(v));
  return c;
}

bool ConeGeom::is_simplicial() const {
  return pointed_ && static_cast<int>(rays_.size()) == cone_dim_;
}

bool ConeGeom::contains(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (const auto& e : hrep_.equalities)
    if (!vec_dot(e, x).is_zero()) return false;
  for (const auto& n : hrep_.normals)
    if (vec_dot(n, x).sign() < 0) return false;
  return true;
}

bool ConeGeom::contains_relative_interior(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorCode::DimensionMismatch, "point dimension mismatch");
  for (const auto& e : hrep_.equalities)
    if (!vec_dot(e, x).is_zero()) return false;
  for (const auto& n : hrep_.normals)
    if (vec_dot(n, x).sign() <= 0) return false;
  return true;
}

bool ConeGeom::contains_cone(const ConeGeom& other) const {
  for (const auto& r : other.rays_)
    if (!contains(r)) return false;
  for (const auto& l : other.lineality_) {
    if (!contains(l)) return false;
    Vec neg = l;
    for (auto& s : neg) s = -s;
    if (!contains(neg)) return false;
  }
  return true;
}

bool ConeGeom::equals(const ConeGeom& other) const {
  if (dim_ != other.dim_ || cone_dim_ != other.cone_dim_ || pointed_ != other.pointed_)
    return false;
  if (pointed_) {
    if (rays_.size() != other.rays_.size()) return false;
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (vec_lex_compare(rays_[i], other.rays_[i]) != 0) return false;
    return true;
  }
  return contains_cone(other) && other.contains_cone(*this);
}

ConeGeom ConeGeom::intersect(const ConeGeom& other) const {
  if (dim_ != other.dim_) fail(ErrorCode::DimensionMismatch, "intersect: ambient dims differ");
  HRep h = hrep_;
  for (const auto& e : other.hrep_.equalities) h.equalities.push_back(e);
  for (const auto& n : other.hrep_.normals) h.normals.push_back(n);
  return from_hrep(h, dim_, field_);
}

std::vector<std::vector<int>> ConeGeom::face_ray_subsets() const {
  // A face is an intersection of facets; enumerate by closure starting from
  // the cone itself.
  std::set<std::vector<int>> faces;
  std::vector<int> all;
  for (int i = 0; i < static_cast<int>(rays_.size()); ++i) all.push_back(i);
  faces.insert(all);
  std::vector<std::vector<int>> frontier{all};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& face : frontier) {
      for (const auto& n : hrep_.normals) {
        std::vector<int> sub;
        for (int i : face)
          if (vec_dot(n, rays_[static_cast<std::size_t>(i)]).is_zero()) sub.push_back(i);
        if (sub != face && faces.insert(sub).second) next.push_back(sub);
      }
    }
    frontier = std::move(next);
  }
  if (pointed_) faces.insert({});
  return {faces.begin(), faces.end()};
}

}  // namespace qfan
