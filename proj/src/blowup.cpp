#include "qfan/blowup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

Vec BlowupSpec::point() const {
  const Calibration& cal = base.cal();
  Vec p(static_cast<std::size_t>(cal.d()), cal.field()->zero());
  for (std::size_t j = 0; j < center.size(); ++j)
    p = vec_add(p, vec_scale(weight[j], cal.column(center[j])));
  return p;
}

std::vector<int> BlowupSpec::moving_positions() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < weight.size(); ++j)
    if (weight[j].sign() > 0) out.push_back(static_cast<int>(j));
  return out;
}

BlowupSpec make_blowup_spec(const QuantumFan& base, const IndexSet& center,
                            const std::vector<Scalar>& weight, bool extend_calibration) {
  if (center.size() != weight.size())
    fail(ErrorCode::DimensionMismatch, "weight vector length differs from the center");
  for (const auto& w : weight)
    if (w.sign() < 0) fail(ErrorCode::NonPositiveWeight, "negative blow-up weight");
  int positives = 0;
  for (const auto& w : weight) positives += w.sign() > 0;
  if (positives < 2)
    fail(ErrorCode::NonPositiveWeight, "a blow-up needs at least two positive weights");

  BlowupSpec spec{base, center, weight, -1};
  Vec alpha = spec.point();
  const Calibration& cal = base.cal();
  for (int j = 0; j < cal.n(); ++j)
    if (cal.column(j) == alpha) {
      spec.new_gen_index = j;
      return spec;
    }
  if (!extend_calibration)
    fail(ErrorCode::MissingCombinationColumn,
         "no calibration column equals the weighted combination");
  // append the column just before the virtual tail
  int insert_at = cal.n() - static_cast<int>(cal.virtuals.size());
  std::vector<Vec> cols;
  for (int j = 0; j < cal.n(); ++j) {
    if (j == insert_at) cols.push_back(alpha);
    cols.push_back(cal.column(j));
  }
  if (insert_at == cal.n()) cols.push_back(alpha);
  auto shift = [&](int j) { return j >= insert_at ? j + 1 : j; };
  Calibration cal2{ExactMatrix::from_columns(cols), {}};
  for (int j : cal.virtuals) cal2.virtuals.push_back(shift(j));
  cal2.virtuals = sorted_set(cal2.virtuals);
  std::vector<IndexSet> cones2;
  for (const auto& c : base.max_cones()) {
    IndexSet s;
    for (int j : c) s.push_back(shift(j));
    cones2.push_back(s);
  }
  std::vector<int> gens2;
  for (int j : base.generators()) gens2.push_back(shift(j));
  spec.base = QuantumFan(cal2, cones2, gens2);
  IndexSet center2;
  for (int j : center) center2.push_back(shift(j));
  spec.center = center2;
  spec.new_gen_index = insert_at;
  return spec;
}

QuantumFan star_subdivision(const QuantumFan& fan, int alpha_index, const IndexSet& sigma) {
  const Calibration& cal = fan.cal();
  if (alpha_index < 0 || alpha_index >= cal.n())
    fail(ErrorCode::IndexNotAvailable, "subdivision index out of range");
  for (int g : fan.generators())
    if (g == alpha_index)
      fail(ErrorCode::IndexNotAvailable, "subdivision index is already a fan generator");
  Vec alpha = cal.column(alpha_index);
  if (vec_is_zero(alpha)) fail(ErrorCode::CenterNotInCone, "subdivision point is zero");
  IndexSet sig = sorted_set(sigma);
  if (!fan.has_cone(sig)) fail(ErrorCode::CenterNotInCone, "sigma is not a cone of the fan");
  if (!fan.geom_of(sig).contains(alpha))
    fail(ErrorCode::CenterNotInCone, "alpha does not lie in sigma");

  // subdividing along an existing ray is the identity
  for (int r : fan.ray_indices())
    if (vec_positive_multiple(alpha, cal.column(r))) return fan;

  std::vector<IndexSet> new_max;
  for (std::size_t i = 0; i < fan.max_cones().size(); ++i) {
    const IndexSet& tau = fan.max_cones()[i];
    const ConeGeom& geom = fan.max_cone_geom(i);
    if (!geom.contains(alpha)) {
      new_max.push_back(tau);
      continue;
    }
    // replace tau by Cone(theta, alpha) over its alpha-free faces theta
    std::vector<IndexSet> candidates;
    for (const auto& theta : face_lattice(cal, tau)) {
      IndexSet th = theta;
      ConeGeom tg = cone_geom(cal, th);
      if (tg.contains(alpha)) continue;
      th.push_back(alpha_index);
      candidates.push_back(sorted_set(th));
    }
    // keep the inclusion-maximal candidates
    for (const auto& c : candidates) {
      bool maximal = true;
      for (const auto& other : candidates)
        if (c != other && std::includes(other.begin(), other.end(), c.begin(), c.end()))
          maximal = false;
      if (maximal) new_max.push_back(c);
    }
  }
  std::vector<int> gens = fan.generators();
  gens.push_back(alpha_index);
  Calibration cal2 = cal;
  cal2.virtuals.erase(std::remove(cal2.virtuals.begin(), cal2.virtuals.end(), alpha_index),
                      cal2.virtuals.end());
  return QuantumFan(cal2, new_max, gens);
}

namespace {

// Checks that the base is the face fan of the standard cone with a
// standard-prefix calibration (the affine chart setting).
void require_standard_chart(const QuantumFan& base) {
  if (!base.cal().standard_prefix())
    fail(ErrorCode::NotValid, "base calibration must have the standard identity prefix");
  if (base.max_cones().size() != 1)
    fail(ErrorCode::NotValid, "base must be the face fan of the standard cone");
  IndexSet expect;
  for (int i = 0; i < base.cal().d(); ++i) expect.push_back(i);
  if (sorted_set(base.max_cones()[0]) != expect)
    fail(ErrorCode::NotValid, "base maximal cone must be Cone(e_1..e_d)");
}

ExactMatrix natural_H(const Calibration& cal, const IndexSet& center,
                      const std::vector<Scalar>& weight, int k) {
  ExactMatrix H = ExactMatrix::identity(cal.n(), cal.field());
  for (int j = 0; j < cal.n(); ++j) H.at(k, j) = cal.field()->zero();
  H.at(k, k) = cal.field()->zero();
  for (std::size_t j = 0; j < center.size(); ++j) H.at(center[j], k) = weight[j];
  return H;
}

}  // namespace

FanMorphism natural_blowup(const BlowupSpec& spec) {
  require_standard_chart(spec.base);
  for (const auto& w : spec.weight) {
    if (w.sign() < 0) fail(ErrorCode::NonPositiveWeight, "negative weight");
    if (w.sign() > 0 && (!w.is_integer()))
      fail(ErrorCode::NonIntegerWeight,
           "natural blow-up needs natural weights, got " + w.to_string());
  }
  const Calibration& cal = spec.base.cal();
  int k = spec.new_gen_index;
  if (cal.column(k) != spec.point())
    fail(ErrorCode::MissingCombinationColumn, "h(e_k) differs from the weighted combination");

  // source fan: replace e_i by the new ray in every moving chart
  std::vector<IndexSet> max_cones;
  for (int pos : spec.moving_positions()) {
    IndexSet c;
    for (std::size_t j = 0; j < spec.center.size(); ++j)
      c.push_back(static_cast<int>(j) == pos ? k : spec.center[j]);
    max_cones.push_back(c);
  }
  Calibration cal_src = cal;
  cal_src.virtuals.erase(std::remove(cal_src.virtuals.begin(), cal_src.virtuals.end(), k),
                         cal_src.virtuals.end());
  std::vector<int> gens = spec.base.generators();
  gens.push_back(k);
  QuantumFan source(cal_src, max_cones, gens);
  return FanMorphism{source, spec.base, ExactMatrix::identity(cal.d(), cal.field()),
                     natural_H(cal, spec.center, spec.weight, k)};
}

bool is_natural_blowup_valid(const BlowupSpec& spec) {
  try {
    FanMorphism m = natural_blowup(spec);
    return validate_morphism(m).ok();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonIntegerWeight) return false;
    throw;
  }
}

BirationalFanMorphism irrational_blowup(const BlowupSpec& spec) {
  for (const auto& w : spec.weight)
    if (w.sign() < 0) fail(ErrorCode::NonPositiveWeight, "negative weight");
  QuantumFan source = star_subdivision(spec.base, spec.new_gen_index, spec.center);
  const FieldPtr& f = spec.base.cal().field();
  return BirationalFanMorphism{source, spec.base, ExactMatrix::identity(spec.base.dim(), f),
                               ExactMatrix::identity(spec.base.cal().n(), f)};
}

// ---------------------------------------------------------------------------
// fiber strata

namespace {

std::string iset_str1(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << (s[i] + 1);
  os << "}";
  return os.str();
}

// Enumerates the inclusion-minimal subsets of `allowed` hitting every set
// in `rows` (each row listed by its allowed nonzero columns).
void minimal_hitting_sets(const std::vector<IndexSet>& rows, const IndexSet& allowed,
                          std::vector<IndexSet>& out) {
  // branch on the first uncovered row; prune non-minimal results at the end
  struct Rec {
    const std::vector<IndexSet>& rows;
    std::vector<IndexSet>& found;
    void run(IndexSet chosen, std::size_t row) {
      while (row < rows.size()) {
        bool hit = false;
        for (int c : rows[row])
          if (std::binary_search(chosen.begin(), chosen.end(), c)) hit = true;
        if (!hit) break;
        ++row;
      }
      if (row == rows.size()) {
        found.push_back(chosen);
        return;
      }
      for (int c : rows[row]) {
        if (std::binary_search(chosen.begin(), chosen.end(), c)) continue;
        IndexSet next = chosen;
        next.insert(std::upper_bound(next.begin(), next.end(), c), c);
        run(std::move(next), row + 1);
      }
    }
  } rec{rows, out};
  for (const auto& r : rows)
    if (r.empty()) return;  // unhittable row: no strata
  if (rows.empty()) {
    out.push_back({});
    return;
  }
  (void)allowed;
  rec.run({}, 0);
  // minimality + dedup
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::vector<IndexSet> minimal;
  for (const auto& a : out) {
    bool is_min = true;
    for (const auto& b : out)
      if (b != a && std::includes(a.begin(), a.end(), b.begin(), b.end())) is_min = false;
    if (is_min) minimal.push_back(a);
  }
  out = std::move(minimal);
}

std::string stHe(const Scalar& s) { return s.to_string(); }

FiberStratum build_stratum(const MonomialMap& map, const IndexSet& i_t, const IndexSet& A) {
  const ExactMatrix& M = map.exponents;
  const FieldPtr& f = M.field();
  FiberStratum st;
  st.zero_set = A;
  IndexSet comp;
  for (int j = 0; j < M.cols(); ++j)
    if (!std::binary_search(A.begin(), A.end(), j)) comp.push_back(j);
  for (int j : comp) {
    bool appears = false;
    for (int i : i_t)
      if (!M.at(i, j).is_zero()) appears = true;
    (appears ? st.solved_set : st.free_set).push_back(j);
  }
  ExactMatrix LA(static_cast<int>(i_t.size()), static_cast<int>(comp.size()), f);
  for (std::size_t r = 0; r < i_t.size(); ++r)
    for (std::size_t c = 0; c < comp.size(); ++c)
      LA.at(static_cast<int>(r), static_cast<int>(c)) = M.at(i_t[r], comp[c]);
  st.solve_matrix = LA;

  std::ostringstream d;
  if (i_t.empty()) {
    d << "C^" << iset_str1(st.free_set) << " x 0_" << iset_str1(A);
  } else if (LA.rows() == 1 && LA.cols() == 1) {
    std::string c = stHe(LA.at(0, 0));
    d << "mu_" << c << " E(w/" << c << ")";
    if (!A.empty()) d << " x 0_" << iset_str1(A);
  } else {
    if (!A.empty()) d << "0_" << iset_str1(A) << " x ";
    d << "E(L_A^-1(w))";
    if (LA.rows() == LA.cols()) {
      Scalar det = LA.det();
      if (!det.is_zero()) d << ", deg |det| = " << stHe(det.abs());
    }
  }
  st.descriptor = d.str();
  return st;
}

}  // namespace

std::vector<FiberStratum> fiber_strata(const MonomialMap& map, const FiberTarget& target) {
  const ExactMatrix& M = map.exponents;
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j)
      if (!M.at(i, j).is_integer() || M.at(i, j).sign() < 0)
        fail(ErrorCode::NonIntegral, "monomial exponents must be nonnegative integers");
  IndexSet i_t;
  switch (target.kind) {
    case TargetKind::Torus:
      for (int i = 0; i < M.rows(); ++i) i_t.push_back(i);
      break;
    case TargetKind::Zero:
      break;
    case TargetKind::Mixed:
      i_t = target.nonzero;
      for (int i : i_t)
        if (i < 0 || i >= M.rows())
          fail(ErrorCode::DimensionMismatch, "target coordinate out of range");
      break;
  }
  std::set<int> nonzero_rows(i_t.begin(), i_t.end());

  // forbidden columns: those appearing in a nonzero-target row
  std::vector<bool> forbidden(static_cast<std::size_t>(M.cols()), false);
  for (int i : i_t)
    for (int j = 0; j < M.cols(); ++j)
      if (!M.at(i, j).is_zero()) forbidden[static_cast<std::size_t>(j)] = true;

  if (target.kind == TargetKind::Torus) {
    // single stratum: nothing vanishes, solve the full system
    return {build_stratum(map, i_t, {})};
  }

  // zero-target rows must be hit inside the allowed columns
  std::vector<IndexSet> rows;
  for (int i = 0; i < M.rows(); ++i) {
    if (nonzero_rows.count(i)) continue;
    IndexSet hit;
    for (int j = 0; j < M.cols(); ++j)
      if (!forbidden[static_cast<std::size_t>(j)] && !M.at(i, j).is_zero()) hit.push_back(j);
    rows.push_back(hit);
  }
  IndexSet allowed;
  for (int j = 0; j < M.cols(); ++j)
    if (!forbidden[static_cast<std::size_t>(j)]) allowed.push_back(j);
  std::vector<IndexSet> zero_sets;
  minimal_hitting_sets(rows, allowed, zero_sets);
  std::vector<FiberStratum> out;
  for (const auto& A : zero_sets) out.push_back(build_stratum(map, i_t, A));
  return out;
}

// ---------------------------------------------------------------------------
// reducedness

ReducednessReport fiber_reduced(const std::vector<Int>& weights, int chart, const IndexSet& J) {
  for (const auto& w : weights)
    if (w <= 0) fail(ErrorCode::NonPositiveWeight, "weights must be positive integers");
  int m = static_cast<int>(weights.size());
  if (chart < 0 || chart >= m) fail(ErrorCode::DimensionMismatch, "chart out of range");
  for (int j : J)
    if (j < 0 || j >= m || j == chart)
      fail(ErrorCode::DimensionMismatch, "J must avoid the chart index");

  auto is_one = [&](int j) { return weights[static_cast<std::size_t>(j)] == 1; };
  // literal general formula: min over J is 1 and everything outside J is 1
  bool general = true;
  if (!J.empty()) {
    bool min_one = false;
    for (int j : J) min_one = min_one || is_one(j);
    general = min_one;
  }
  for (int k = 0; k < m && general; ++k)
    if (!std::binary_search(J.begin(), J.end(), k)) general = general && is_one(k);

  // stated special cases: generic point and the origin
  bool strict;
  if (static_cast<int>(J.size()) == m - 1) {
    bool any_one = false;
    for (int k = 0; k < m; ++k) any_one = any_one || is_one(k);
    strict = any_one;  // min over the whole moving part equals 1
  } else if (J.empty()) {
    strict = true;
    for (int k = 0; k < m; ++k)
      if (k != chart) strict = strict && is_one(k);
  } else {
    strict = general;
  }
  return ReducednessReport{strict, general, strict == general};
}

bool blowup_fibers_reduced(const std::vector<Int>& weights) {
  for (const auto& w : weights)
    if (w <= 0) fail(ErrorCode::NonPositiveWeight, "weights must be positive integers");
  for (const auto& w : weights)
    if (w != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// exceptional divisor

namespace {

// positions of the moving part as ambient coordinate indices
std::vector<int> moving_coords(const BlowupSpec& spec) {
  std::vector<int> out;
  for (int pos : spec.moving_positions()) out.push_back(spec.center[static_cast<std::size_t>(pos)]);
  return out;
}

}  // namespace

ExactMatrix divisor_chart_transition(const BlowupSpec& spec, int to_chart, int from_chart) {
  require_standard_chart(spec.base);
  const FieldPtr& f = spec.base.cal().field();
  auto ic = moving_coords(spec);
  Vec alpha = spec.point();
  int q = static_cast<int>(ic.size()) - 1;
  if (to_chart == from_chart) return ExactMatrix::identity(q, f);
  int i = ic[static_cast<std::size_t>(from_chart)], j = ic[static_cast<std::size_t>(to_chart)];
  std::vector<int> src, dst;
  for (int m : ic)
    if (m != i) src.push_back(m);
  for (int m : ic)
    if (m != j) dst.push_back(m);
  auto dpos = [&](int m) {
    return static_cast<int>(std::lower_bound(dst.begin(), dst.end(), m) - dst.begin());
  };
  ExactMatrix T(q, q, f);
  for (int c = 0; c < q; ++c) {
    int l = src[static_cast<std::size_t>(c)];
    if (l != j) {
      T.at(dpos(l), c) = f->one();
    } else {
      // e_j maps to -sum_{m in I^c \ {j}} (alpha_m / alpha_j) e_m
      for (int m : dst)
        T.at(dpos(m), c) =
            -(alpha[static_cast<std::size_t>(m)] / alpha[static_cast<std::size_t>(j)]);
    }
  }
  return T;
}

QuantumFan exceptional_divisor(const BlowupSpec& spec, int chart) {
  require_standard_chart(spec.base);
  const Calibration& cal = spec.base.cal();
  const FieldPtr& f = cal.field();
  auto ic = moving_coords(spec);
  if (static_cast<int>(ic.size()) < 2)
    fail(ErrorCode::NonPositiveWeight, "divisor needs at least two positive weights");
  if (chart < 0 || chart >= static_cast<int>(ic.size()))
    fail(ErrorCode::DimensionMismatch, "chart out of range");
  int i = ic[static_cast<std::size_t>(chart)];
  Vec alpha = spec.point();
  int d = cal.d(), n = cal.n(), k = spec.new_gen_index;
  std::vector<int> coords;  // I^c \ {i}, the divisor's coordinate axes
  for (int m : ic)
    if (m != i) coords.push_back(m);
  int q = static_cast<int>(coords.size());

  // A_i: identity with column i replaced by alpha
  ExactMatrix Ai = ExactMatrix::identity(d, f);
  for (int r = 0; r < d; ++r) Ai.at(r, i) = alpha[static_cast<std::size_t>(r)];
  ExactMatrix Ainv = Ai.inverse();
  // H_i: transposition of columns k and i
  ExactMatrix Hi = ExactMatrix::identity(n, f);
  Hi.at(k, k) = f->zero();
  Hi.at(i, i) = f->zero();
  Hi.at(k, i) = f->one();
  Hi.at(i, k) = f->one();
  ExactMatrix glued = Ainv * cal.columns * Hi;  // d x n
  ExactMatrix pr(q, n, f);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < n; ++c) pr.at(r, c) = glued.at(coords[static_cast<std::size_t>(r)], c);

  Calibration dcal{pr, {}};
  for (int v : cal.virtuals)
    if (v != k) dcal.virtuals.push_back(v);
  dcal.virtuals = sorted_set(dcal.virtuals);

  // rays: e_j for j in coords (these are the columns at the same indices)
  // and the last vector, which sits in column k
  IndexSet ray_cols = coords;
  ray_cols.push_back(k);
  std::vector<IndexSet> max_cones;
  for (std::size_t omit = 0; omit < ray_cols.size(); ++omit) {
    IndexSet c;
    for (std::size_t t = 0; t < ray_cols.size(); ++t)
      if (t != omit) c.push_back(ray_cols[t]);
    max_cones.push_back(c);
  }
  return QuantumFan(dcal, max_cones, ray_cols);
}

// ---------------------------------------------------------------------------
// rational zig-zag

RationalZigzag rational_zigzag(const BlowupSpec& spec) {
  require_standard_chart(spec.base);
  const Calibration& cal = spec.base.cal();
  const FieldPtr& f = cal.field();
  Int N(1);
  for (const auto& w : spec.weight) {
    if (w.sign() < 0) fail(ErrorCode::NonPositiveWeight, "negative weight");
    if (!w.is_rational())
      fail(ErrorCode::NotRational, "rational zig-zag needs rational weights, got " + w.to_string());
    if (w.sign() > 0) N = lcm(N, denominator(w.rational_value()));
  }
  int k = spec.new_gen_index;
  if (cal.column(k) != spec.point())
    fail(ErrorCode::MissingCombinationColumn, "h(e_k) differs from the weighted combination");

  // the weighted fan over h (virtual set loses k)
  std::vector<IndexSet> star_cones;
  for (int pos : spec.moving_positions()) {
    IndexSet c;
    for (std::size_t j = 0; j < spec.center.size(); ++j)
      c.push_back(static_cast<int>(j) == pos ? k : spec.center[j]);
    star_cones.push_back(c);
  }
  Calibration cal_star = cal;
  cal_star.virtuals.erase(std::remove(cal_star.virtuals.begin(), cal_star.virtuals.end(), k),
                          cal_star.virtuals.end());
  std::vector<int> gens = spec.base.generators();
  gens.push_back(k);
  QuantumFan weighted(cal_star, star_cones, gens);

  // the middle fan: same cones over the N-scaled calibration
  Scalar Ns = f->from_rat(Rat(N));
  ExactMatrix scaled = cal.columns;
  for (int r = 0; r < scaled.rows(); ++r)
    for (int c = 0; c < scaled.cols(); ++c) scaled.at(r, c) = Ns * scaled.at(r, c);
  Calibration cal_mid{scaled, cal_star.virtuals};
  QuantumFan middle(cal_mid, star_cones, gens);

  ExactMatrix NI = ExactMatrix::identity(cal.n(), f);
  for (int c = 0; c < NI.cols(); ++c) NI.at(c, c) = Ns;
  ExactMatrix NH = natural_H(cal, spec.center, spec.weight, k);
  for (int r = 0; r < NH.rows(); ++r)
    for (int c = 0; c < NH.cols(); ++c) NH.at(r, c) = Ns * NH.at(r, c);

  FanMorphism up{middle, weighted, ExactMatrix::identity(cal.d(), f), NI};
  FanMorphism down{middle, spec.base, ExactMatrix::identity(cal.d(), f), NH};
  return RationalZigzag{up, down, N};
}

// ---------------------------------------------------------------------------
// d = 2 zig-zag decomposition

namespace {

struct MasterIndexing {
  Calibration master;
  std::vector<int> map1;  // f1 column -> master column (rays only, else -1)
  std::vector<int> map2;
};

MasterIndexing build_master(const QuantumFan& f1, const QuantumFan& f2) {
  const FieldPtr& f = f1.cal().field();
  std::vector<Vec> cols;
  cols.push_back(Vec{f->one(), f->zero()});
  cols.push_back(Vec{f->zero(), f->one()});
  auto find_ray = [&](const Vec& v) -> int {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (vec_positive_multiple(v, cols[j])) return static_cast<int>(j);
    return -1;
  };
  MasterIndexing mi;
  mi.map1.assign(static_cast<std::size_t>(f1.cal().n()), -1);
  mi.map2.assign(static_cast<std::size_t>(f2.cal().n()), -1);
  for (int j : f1.ray_indices()) {
    Vec v = f1.cal().column(j);
    int at = find_ray(v);
    if (at < 0) {
      at = static_cast<int>(cols.size());
      cols.push_back(v);
    }
    mi.map1[static_cast<std::size_t>(j)] = at;
  }
  for (int j : f2.ray_indices()) {
    Vec v = f2.cal().column(j);
    int at = find_ray(v);
    if (at < 0) {
      at = static_cast<int>(cols.size());
      cols.push_back(v);
    }
    mi.map2[static_cast<std::size_t>(j)] = at;
  }
  mi.master = Calibration{ExactMatrix::from_columns(cols), {}};
  return mi;
}

std::vector<int> virtuals_for(const Calibration& master, const std::vector<int>& gens) {
  std::set<int> a(gens.begin(), gens.end());
  std::vector<int> out;
  for (int j = 2; j < master.n(); ++j)  // keep e1, e2 as plain columns
    if (!a.count(j)) out.push_back(j);
  return out;
}

QuantumFan reindex(const QuantumFan& fan, const Calibration& master,
                   const std::vector<int>& map) {
  std::vector<IndexSet> cones;
  for (const auto& c : fan.max_cones()) {
    IndexSet s;
    for (int j : c) s.push_back(map[static_cast<std::size_t>(j)]);
    cones.push_back(sorted_set(s));
  }
  std::vector<int> gens;
  for (int j : fan.generators()) gens.push_back(map[static_cast<std::size_t>(j)]);
  gens = sorted_set(gens);
  Calibration cal{master.columns, virtuals_for(master, gens)};
  return QuantumFan(cal, cones, gens);
}

}  // namespace

ZigzagResult zigzag_dim2(const QuantumFan& f1, const QuantumFan& f2) {
  if (f1.dim() != 2 || f2.dim() != 2)
    fail(ErrorCode::UnsupportedDimension, "the zig-zag decomposition is implemented for d = 2");
  if (!f1.cal().field()->same_as(*f2.cal().field()))
    fail(ErrorCode::FieldMismatch, "fans must share one field");
  if (!support_equal(f1, f2)) fail(ErrorCode::UnequalSupport, "fan supports differ");

  MasterIndexing mi = build_master(f1, f2);
  ZigzagResult result{mi.master, reindex(f1, mi.master, mi.map1),
                      reindex(f2, mi.master, mi.map2), {}};

  std::set<int> rays1, rays2;
  for (int j : f1.ray_indices()) rays1.insert(mi.map1[static_cast<std::size_t>(j)]);
  for (int j : f2.ray_indices()) rays2.insert(mi.map2[static_cast<std::size_t>(j)]);

  std::vector<int> to_insert, to_delete;
  for (int r : rays2)
    if (!rays1.count(r)) to_insert.push_back(r);
  for (int r : rays1)
    if (!rays2.count(r)) to_delete.push_back(r);
  auto by_angle = [&](int a, int b) {
    return angular_compare(mi.master.column(a), mi.master.column(b)) < 0;
  };
  std::sort(to_insert.begin(), to_insert.end(), by_angle);
  std::sort(to_delete.begin(), to_delete.end(), by_angle);

  QuantumFan current = result.start;
  for (int r : to_insert) {
    Vec alpha = mi.master.column(r);
    // locate the 2-cone whose interior holds alpha
    const IndexSet* host = nullptr;
    for (std::size_t i = 0; i < current.max_cones().size(); ++i)
      if (current.max_cone_geom(i).dim() == 2 &&
          current.max_cone_geom(i).contains_relative_interior(alpha))
        host = &current.max_cones()[i];
    if (!host) fail(ErrorCode::UnequalSupport, "ray to insert lies outside the support");
    IndexSet sigma = sorted_set(*host);
    // the two neighbor weights: alpha = w0 * u + w1 * w
    ExactMatrix G = ExactMatrix::from_columns(
        {current.cal().column(sigma[0]), current.cal().column(sigma[1])});
    Vec w = *G.solve(alpha);
    std::vector<IndexSet> cones;
    for (const auto& c : current.max_cones())
      if (sorted_set(c) != sigma) cones.push_back(c);
    cones.push_back(IndexSet{sigma[0], r});
    cones.push_back(IndexSet{r, sigma[1]});
    std::vector<int> gens = current.generators();
    gens.push_back(r);
    gens = sorted_set(gens);
    QuantumFan next(Calibration{mi.master.columns, virtuals_for(mi.master, gens)}, cones, gens);
    result.steps.push_back(ZigzagStep{true, r, w, next});
    current = std::move(next);
  }
  for (int r : to_delete) {
    std::vector<IndexSet> adjacent;
    std::vector<IndexSet> cones;
    for (const auto& c : current.max_cones()) {
      IndexSet s = sorted_set(c);
      if (std::binary_search(s.begin(), s.end(), r) && s.size() == 2)
        adjacent.push_back(s);
      else
        cones.push_back(c);
    }
    if (adjacent.size() != 2)
      fail(ErrorCode::UnequalSupport, "blow-down ray does not have two neighbors");
    IndexSet merged;
    for (const auto& s : adjacent)
      for (int j : s)
        if (j != r) merged.push_back(j);
    merged = sorted_set(merged);
    cones.push_back(merged);
    std::vector<int> gens;
    for (int g : current.generators())
      if (g != r) gens.push_back(g);
    QuantumFan next(Calibration{mi.master.columns, virtuals_for(mi.master, gens)}, cones, gens);
    result.steps.push_back(ZigzagStep{false, r, {}, next});
    current = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// rational approximation

RationalApproximation rational_approximation(const QuantumFan& fan, std::vector<Int> ladder) {
  if (!fan.is_simplicial()) fail(ErrorCode::NotValid, "approximation needs a simplicial fan");
  if (ladder.empty())
    ladder = {Int(1) << 4, Int(1) << 8, Int(1) << 16, Int(1) << 32};
  const Calibration& cal = fan.cal();
  const FieldPtr& f = cal.field();

  // fast path: already rational
  bool rational = true;
  Int denom(1);
  for (int j = 0; j < cal.n() && rational; ++j) {
    if (cal.is_virtual(j)) continue;
    for (int r = 0; r < cal.d(); ++r) {
      const Scalar& s = cal.columns.at(r, j);
      if (!s.is_rational()) {
        rational = false;
        break;
      }
      denom = lcm(denom, denominator(s.rational_value()));
    }
  }
  if (rational) return RationalApproximation{fan, denom};

  std::string last_failure = "empty ladder";
  for (const Int& Q : ladder) {
    ExactMatrix cols = cal.columns;
    for (int j = 0; j < cal.n(); ++j) {
      if (cal.is_virtual(j)) continue;
      for (int r = 0; r < cal.d(); ++r)
        cols.at(r, j) = f->from_rat(cal.columns.at(r, j).round(Q));
    }
    Calibration cal2{cols, cal.virtuals};
    QuantumFan cand(cal2, fan.max_cones(), fan.generators());
    auto report = validate_fan(cand);
    if (!report.ok()) {
      last_failure = "validate_fan: " + report.violations[0].code;
      continue;
    }
    if (cand.cones() != fan.cones()) {
      last_failure = "combinatorial type changed";
      continue;
    }
    if (cand.ray_indices().size() != fan.ray_indices().size()) {
      last_failure = "distinct rays collapsed";
      continue;
    }
    bool simplicial_ok = true;
    for (std::size_t i = 0; i < cand.max_cones().size(); ++i)
      if (cand.max_cone_geom(i).dim() != fan.max_cone_geom(i).dim()) simplicial_ok = false;
    if (!simplicial_ok) {
      last_failure = "cone dimension changed";
      continue;
    }
    return RationalApproximation{cand, Q};
  }
  fail(ErrorCode::BudgetExhausted, "no denominator in the ladder preserved the fan (" +
                                       last_failure + ")");
}

}  // namespace qfan
