#include "qfan/cobordism.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

namespace {

// For an integer matrix whose columns are all zero or standard unit
// vectors hitting every row exactly once: column -> target row (-1 for
// dropped columns). nullopt when the matrix is not of this shape.
std::optional<std::vector<int>> coordinate_projection_map(const ExactMatrix& H) {
  std::vector<int> map(static_cast<std::size_t>(H.cols()), -1);
  std::vector<int> hits(static_cast<std::size_t>(H.rows()), 0);
  const FieldPtr& f = H.field();
  for (int j = 0; j < H.cols(); ++j) {
    int unit_row = -1;
    for (int i = 0; i < H.rows(); ++i) {
      const Scalar& v = H.at(i, j);
      if (v.is_zero()) continue;
      if (v != f->one() || unit_row >= 0) return std::nullopt;
      unit_row = i;
    }
    map[static_cast<std::size_t>(j)] = unit_row;
    if (unit_row >= 0) hits[static_cast<std::size_t>(unit_row)]++;
  }
  for (int h : hits)
    if (h != 1) return std::nullopt;
  return map;
}

bool order_preserving(const std::vector<int>& map) {
  int prev = -1;
  for (int t : map) {
    if (t < 0) continue;
    if (t <= prev) return false;
    prev = t;
  }
  return true;
}

// ray indices of a set of maximal cones of the total fan
std::set<int> rays_of_subfan(const QuantumFan& total, const std::vector<int>& sub) {
  std::set<int> out;
  for (int ci : sub)
    for (const auto& face : face_lattice(total.cal(), total.max_cones()[static_cast<std::size_t>(ci)]))
      if (face.size() == 1) out.insert(face[0]);
  return out;
}

std::string iset_str(const IndexSet& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << (s[i] + 1);
  os << "}";
  return os.str();
}

int leftover_index(const FanCobordism& c) {
  std::set<int> used(c.sub0.begin(), c.sub0.end());
  used.insert(c.sub1.begin(), c.sub1.end());
  int leftover = -1;
  for (int i = 0; i < static_cast<int>(c.total.max_cones().size()); ++i)
    if (!used.count(i)) {
      if (leftover >= 0) return -1;
      leftover = i;
    }
  return leftover;
}

// maximal cones of the given side meeting the leftover cone in dimension d
std::vector<int> side_neighbors(const FanCobordism& c, const std::vector<int>& sub,
                                int leftover) {
  const ConeGeom& sigma = c.total.max_cone_geom(static_cast<std::size_t>(leftover));
  int d = c.total.dim() - 1;
  std::vector<int> out;
  for (int ci : sub) {
    ConeGeom inter = sigma.intersect(c.total.max_cone_geom(static_cast<std::size_t>(ci)));
    if (inter.dim() == d) out.push_back(ci);
  }
  return out;
}

// the target cone (index set) of a total max cone under a coordinate projection
IndexSet project_cone(const IndexSet& gens, const std::vector<int>& colmap) {
  IndexSet out;
  for (int j : gens) {
    int t = colmap[static_cast<std::size_t>(j)];
    if (t >= 0) out.push_back(t);
  }
  return sorted_set(out);
}

}  // namespace

bool fans_geometrically_equal(const QuantumFan& a, const QuantumFan& b) {
  if (a.dim() != b.dim()) return false;
  if (a.max_cones().size() != b.max_cones().size()) return false;
  std::vector<bool> used(b.max_cones().size(), false);
  for (std::size_t i = 0; i < a.max_cones().size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < b.max_cones().size() && !found; ++j) {
      if (used[j]) continue;
      if (a.max_cone_geom(i).equals(b.max_cone_geom(j))) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

ValidationReport validate_cobordism(const FanCobordism& c) {
  ValidationReport r;
  const QuantumFan& total = c.total;
  int d = total.dim() - 1;

  ValidationReport base = validate_fan(total);
  if (!base.ok()) {
    r.add("TotalFanInvalid", base.violations[0].code + ": " + base.violations[0].message);
    return r;
  }
  if (!total.is_complete()) r.add("NotComplete", "the total fan is not complete");
  if (!total.is_simplicial()) r.add("NotSimplicial", "the total fan is not simplicial");

  // subfan bookkeeping
  std::set<int> s0(c.sub0.begin(), c.sub0.end()), s1(c.sub1.begin(), c.sub1.end());
  for (int i : s0)
    if (s1.count(i))
      r.add("DisjointnessViolated",
            "maximal cone " + std::to_string(i + 1) + " lies in both subfans");
  int nmax = static_cast<int>(total.max_cones().size());
  for (int i : s0)
    if (i < 0 || i >= nmax) r.add("SubfanIndexOutOfRange", std::to_string(i));
  for (int i : s1)
    if (i < 0 || i >= nmax) r.add("SubfanIndexOutOfRange", std::to_string(i));
  if (static_cast<int>(s0.size()) + static_cast<int>(s1.size()) + 1 != nmax ||
      leftover_index(c) < 0)
    r.add("LeftoverCountViolated",
          "exactly one maximal cone must avoid both subfans");
  if (!r.ok()) return r;

  // the pre-cobordism conditions on both projections
  auto check_projection = [&](const CobordismProjection& pr, const std::vector<int>& sub,
                              const char* name) -> std::optional<std::vector<int>> {
    const Calibration& h = total.cal();
    const Calibration& hi = pr.target.cal();
    if (pr.L.rows() != d || pr.L.cols() != d + 1 || pr.H.rows() != hi.n() ||
        pr.H.cols() != h.n()) {
      r.add("ShapeMismatch", std::string(name) + ": projection shapes are off");
      return std::nullopt;
    }
    if (pr.L.rank() != d) r.add("ProjectionNotOnto", std::string(name) + ": L is not onto");
    if (pr.H.rank() != hi.n()) r.add("ProjectionNotOnto", std::string(name) + ": H is not onto");
    if (!pr.H.all_integer()) r.add("HNotIntegral", std::string(name) + ": H must be integral");
    ExactMatrix lhs = pr.L * h.columns;
    ExactMatrix rhs = hi.columns * pr.H;
    if (!(lhs == rhs))
      r.add("DiagramNotCommuting", std::string(name) + ": L h != h_i H");
    auto colmap = coordinate_projection_map(pr.H);
    // cone transport: every subfan cone projects onto a cone of the target
    std::set<IndexSet> hit;
    for (int ci : sub) {
      const IndexSet& gens = total.max_cones()[static_cast<std::size_t>(ci)];
      std::vector<Vec> img;
      for (int j : gens) img.push_back(pr.L.apply(h.column(j)));
      ConeGeom img_cone = ConeGeom::from_generators(img, d, h.field());
      auto match = pr.target.find_cone_matching(img_cone);
      if (!match) {
        r.add("ConeNotMappedOntoTarget",
              std::string(name) + ": image of cone " + iset_str(gens) +
                  " is not a cone of the target");
        continue;
      }
      hit.insert(*match);
      if (colmap) {
        IndexSet expect = project_cone(gens, *colmap);
        if (expect != *match)
          r.add("IndexTransportMismatch",
                std::string(name) + ": H-transport of " + iset_str(gens) +
                    " disagrees with the geometric image");
      }
    }
    for (const auto& tc : pr.target.max_cones())
      if (!hit.count(sorted_set(tc)))
        r.add("TargetConeNotCovered",
              std::string(name) + ": target cone " + iset_str(tc) + " is not an image");
    return colmap;
  };
  auto map0 = check_projection(c.proj0, c.sub0, "pi_0");
  auto map1 = check_projection(c.proj1, c.sub1, "pi_1");

  // Def 6.2.5 strengthening
  int n = total.cal().n();
  int n0 = c.proj0.target.cal().n(), n1 = c.proj1.target.cal().n();
  if (n0 != n - 2 || n1 != n - 2)
    r.add("GeneratorCountViolated", "n_0 + 2 = n_1 + 2 = n fails");
  if (!map0 || !map1 || !(c.proj0.H == c.proj1.H)) {
    r.add("HNotCoordinateProjection",
          "both H must be the same coordinate projection dropping two columns");
    return r;
  }
  if (!order_preserving(*map0))
    r.add("HNotCoordinateProjection", "H must drop coordinates keeping the order");
  std::vector<int> dropped;
  for (int j = 0; j < n; ++j)
    if ((*map0)[static_cast<std::size_t>(j)] < 0) dropped.push_back(j);
  if (dropped.size() != 2)
    r.add("HNotCoordinateProjection", "H must drop exactly two coordinates");

  // the dropped columns are the rays outside both projected ray sets
  auto total_rays_v = total.ray_indices();
  std::set<int> total_rays(total_rays_v.begin(), total_rays_v.end());
  std::set<int> rays0, rays1;  // end-fan ray indices pulled back to total columns
  {
    auto a0 = c.proj0.target.ray_indices();
    auto a1 = c.proj1.target.ray_indices();
    std::set<int> A0(a0.begin(), a0.end()), A1(a1.begin(), a1.end());
    for (int j = 0; j < n; ++j) {
      int t = (*map0)[static_cast<std::size_t>(j)];
      if (t < 0) continue;
      if (A0.count(t)) rays0.insert(j);
      if (A1.count(t)) rays1.insert(j);
    }
  }
  {
    std::set<int> expect_drop;
    for (int j : total_rays)
      if (!rays0.count(j) && !rays1.count(j)) expect_drop.insert(j);
    std::set<int> got(dropped.begin(), dropped.end());
    if (got != expect_drop)
      r.add("DroppedColumnsMismatch",
            "H must drop exactly the rays outside both end-fan ray sets");
  }
  if (!r.ok()) return r;

  // index and the virtual adjustment rule
  int leftover = leftover_index(c);
  int a = static_cast<int>(side_neighbors(c, c.sub0, leftover).size());
  int b = static_cast<int>(side_neighbors(c, c.sub1, leftover).size());
  if (a + b != d + 1)
    r.add("IndexCountViolated", "the leftover cone must have d+1 facet neighbors");

  auto subfan_with_virtuals = [&](const std::vector<int>& sub, const std::set<int>& extra) {
    std::vector<IndexSet> cones;
    std::set<int> gens;
    for (int ci : sub) {
      cones.push_back(total.max_cones()[static_cast<std::size_t>(ci)]);
      for (int j : rays_of_subfan(total, {ci})) gens.insert(j);
    }
    Calibration cal = total.cal();
    std::set<int> virt(cal.virtuals.begin(), cal.virtuals.end());
    for (int j : extra) virt.insert(j);
    cal.virtuals.assign(virt.begin(), virt.end());
    return QuantumFan(cal, cones, std::vector<int>(gens.begin(), gens.end()));
  };
  std::set<int> extra0, extra1;
  if (a == 1)
    for (int j : rays1)
      if (!rays0.count(j)) extra0.insert(j);
  if (b == 1)
    for (int j : rays0)
      if (!rays1.count(j)) extra1.insert(j);
  ValidationReport m0 = validate_morphism(
      FanMorphism{subfan_with_virtuals(c.sub0, extra0), c.proj0.target, c.proj0.L, c.proj0.H});
  for (const auto& v : m0.violations)
    r.add("Pi0NotAMorphism", v.code + ": " + v.message);
  ValidationReport m1 = validate_morphism(
      FanMorphism{subfan_with_virtuals(c.sub1, extra1), c.proj1.target, c.proj1.L, c.proj1.H});
  for (const auto& v : m1.violations)
    r.add("Pi1NotAMorphism", v.code + ": " + v.message);

  // ray-count laws per index class
  {
    std::size_t nd = total_rays.size();
    std::size_t n0r = rays0.size(), n1r = rays1.size();
    bool law_ok = true;
    if (a >= 2 && b >= 2)
      law_ok = (rays0 == rays1) && nd == n0r + 2;
    else if (a == 1)
      law_ok = std::includes(rays1.begin(), rays1.end(), rays0.begin(), rays0.end()) &&
               rays0 != rays1 && nd == n0r + 3 && nd == n1r + 2;
    else if (b == 1)
      law_ok = std::includes(rays0.begin(), rays0.end(), rays1.begin(), rays1.end()) &&
               rays0 != rays1 && nd == n1r + 3 && nd == n0r + 2;
    if (!law_ok)
      r.add("RayCountLaw", "the ray-count identities for index (" + std::to_string(a) + "," +
                               std::to_string(b) + ") fail");
  }
  return r;
}

std::pair<int, int> cobordism_index(const FanCobordism& c) {
  int leftover = leftover_index(c);
  if (leftover < 0) fail(ErrorCode::NotValid, "no unique leftover maximal cone");
  int a = static_cast<int>(side_neighbors(c, c.sub0, leftover).size());
  int b = static_cast<int>(side_neighbors(c, c.sub1, leftover).size());
  if (a + b != c.total.dim())
    fail(ErrorCode::NotValid, "leftover cone has the wrong number of facet neighbors");
  return {a, b};
}

ConeGeom catastrophe_merged_cone(const FanCobordism& c) {
  if (!c.shared_projection())
    fail(ErrorCode::NotValid, "catastrophe construction needs shared (L, H); normalize first");
  int leftover = leftover_index(c);
  if (leftover < 0) fail(ErrorCode::NotValid, "no unique leftover maximal cone");
  int d = c.total.dim() - 1;
  auto project_union = [&](const std::vector<int>& side) {
    std::vector<Vec> gens;
    for (int ci : side_neighbors(c, side, leftover))
      for (int j : c.total.max_cones()[static_cast<std::size_t>(ci)])
        gens.push_back(c.proj0.L.apply(c.total.cal().column(j)));
    return ConeGeom::from_generators(gens, d, c.total.cal().field());
  };
  ConeGeom m0 = project_union(c.sub0);
  ConeGeom m1 = project_union(c.sub1);
  // mutual containment of generators, checked exactly
  if (!m0.contains_cone(m1) || !m1.contains_cone(m0))
    fail(ErrorCode::UnionsDiffer, "the projected unions of the two sides differ");
  return m0;
}

namespace {

// replace the L-images of the leftover neighbors by the merged cone
QuantumFan coarsen_side(const FanCobordism& c, const std::vector<int>& sub,
                        const QuantumFan& target, const ConeGeom& merged,
                        const std::vector<int>& virtuals) {
  int leftover = leftover_index(c);
  std::set<IndexSet> replaced;
  auto colmap = coordinate_projection_map(c.proj0.H);
  for (int ci : side_neighbors(c, sub, leftover))
    replaced.insert(project_cone(c.total.max_cones()[static_cast<std::size_t>(ci)], *colmap));
  std::vector<IndexSet> cones;
  for (const auto& tc : target.max_cones())
    if (!replaced.count(sorted_set(tc))) cones.push_back(tc);
  // merged cone's generator indices: target columns on its extreme rays
  IndexSet merged_gens;
  for (const auto& ray : merged.extreme_rays()) {
    int found = -1;
    for (int j = 0; j < target.cal().n() && found < 0; ++j)
      if (vec_positive_multiple(target.cal().column(j), ray)) found = j;
    if (found < 0)
      fail(ErrorCode::UnionsDiffer, "a merged-cone ray is not a calibration column");
    merged_gens.push_back(found);
  }
  cones.push_back(sorted_set(merged_gens));
  std::set<int> gens;
  for (const auto& cgens : cones)
    for (int j : cgens) gens.insert(j);
  // keep only ray generators of the coarsened fan
  Calibration cal{target.cal().columns, virtuals};
  QuantumFan out(cal, cones, std::vector<int>(gens.begin(), gens.end()));
  std::vector<int> rays = out.ray_indices();
  return QuantumFan(cal, cones, rays);
}

}  // namespace

QuantumFan catastrophe_fan(const FanCobordism& c) {
  ConeGeom merged = catastrophe_merged_cone(c);
  std::vector<int> virt;
  {
    std::set<int> v0(c.proj0.target.cal().virtuals.begin(), c.proj0.target.cal().virtuals.end());
    for (int j : c.proj1.target.cal().virtuals)
      if (v0.count(j)) virt.push_back(j);
  }
  QuantumFan side0 = coarsen_side(c, c.sub0, c.proj0.target, merged, virt);
  QuantumFan side1 = coarsen_side(c, c.sub1, c.proj1.target, merged, virt);
  if (!fans_geometrically_equal(side0, side1))
    fail(ErrorCode::UnionsDiffer, "the two coarsened fans do not coincide");
  return side0;
}

// ---------------------------------------------------------------------------

FanCobordism blowup_cobordism(const QuantumFan& base, const IndexSet& sigma,
                              const std::vector<Scalar>& alpha, bool extend_calibration) {
  const Calibration& cal0 = base.cal();
  const FieldPtr& f = cal0.field();
  int d = cal0.d();
  if (d < 2) fail(ErrorCode::NotComplete, "blow-up cobordisms need dimension >= 2");
  if (!base.is_complete() || !base.is_simplicial())
    fail(ErrorCode::NotComplete, "the base must be a complete simplicial fan");
  if (static_cast<int>(sigma.size()) != d || static_cast<int>(alpha.size()) != d)
    fail(ErrorCode::DimensionMismatch, "sigma and alpha must have d entries");
  for (const auto& w : alpha)
    if (w.sign() <= 0) fail(ErrorCode::NonPositiveWeight, "weights must be positive");

  BlowupSpec spec = make_blowup_spec(base, sigma, alpha, extend_calibration);
  // the combination column is virtual in the 0-end (it spans no ray there)
  if (!spec.base.cal().is_virtual(spec.new_gen_index)) {
    Calibration cal_v = spec.base.cal();
    cal_v.virtuals.push_back(spec.new_gen_index);
    cal_v.virtuals = sorted_set(cal_v.virtuals);
    spec.base = QuantumFan(cal_v, spec.base.max_cones(), spec.base.generators());
  }
  const QuantumFan& b0 = spec.base;  // possibly extended
  const Calibration& h0 = b0.cal();
  int n0 = h0.n();
  int k0 = spec.new_gen_index;

  // total columns: [base 0..d-1 | e_{d+1} | base d..n0-1 | -e_{d+1}], the
  // combination column pushed down to height -1
  auto shift = [&](int j) { return j < d ? j : j + 1; };
  int pos_up = d, pos_down = n0 + 1, k_new = shift(k0);
  std::vector<Vec> cols(static_cast<std::size_t>(n0 + 2));
  for (int j = 0; j < n0; ++j) {
    Vec v = h0.column(j);
    v.push_back(j == k0 ? -f->one() : f->zero());
    cols[static_cast<std::size_t>(shift(j))] = std::move(v);
  }
  {
    Vec up(static_cast<std::size_t>(d + 1), f->zero());
    up[static_cast<std::size_t>(d)] = f->one();
    cols[static_cast<std::size_t>(pos_up)] = up;
    Vec down(static_cast<std::size_t>(d + 1), f->zero());
    down[static_cast<std::size_t>(d)] = -f->one();
    cols[static_cast<std::size_t>(pos_down)] = down;
  }
  std::vector<int> virt;
  for (int j : h0.virtuals)
    if (j != k0) virt.push_back(shift(j));
  Calibration total_cal{ExactMatrix::from_columns(cols), sorted_set(virt)};

  IndexSet sigma_new;
  for (int j : spec.center) sigma_new.push_back(shift(j));
  std::vector<IndexSet> max_cones;
  std::vector<int> sub0, sub1;
  int idx = 0;
  for (const auto& tau : b0.max_cones()) {
    IndexSet up;
    for (int j : tau) up.push_back(shift(j));
    up.push_back(pos_up);
    max_cones.push_back(up);
    sub0.push_back(idx++);
  }
  IndexSet sigma_sorted = sorted_set(sigma_new);
  for (const auto& tau : b0.max_cones()) {
    IndexSet down;
    for (int j : tau) down.push_back(shift(j));
    if (sorted_set(down) == sigma_sorted) continue;  // subdivided below
    down.push_back(pos_down);
    max_cones.push_back(down);
    sub1.push_back(idx++);
  }
  // star subdivision pieces of sigma x R_{<=0}: drop one generator at a time
  IndexSet sig_down = sigma_new;
  sig_down.push_back(pos_down);
  for (std::size_t omit = 0; omit < sig_down.size(); ++omit) {
    IndexSet cgens;
    for (std::size_t t = 0; t < sig_down.size(); ++t)
      if (t != omit) cgens.push_back(sig_down[t]);
    cgens.push_back(k_new);
    max_cones.push_back(cgens);
    if (sig_down[omit] == pos_down) {
      // the leftover cone Cone(sigma, new ray): neither side
      idx++;
    } else {
      sub1.push_back(idx++);
    }
  }
  std::vector<int> gens;
  for (int g : b0.generators()) gens.push_back(shift(g));
  gens.push_back(pos_up);
  gens.push_back(pos_down);
  gens.push_back(k_new);
  QuantumFan total(total_cal, max_cones, sorted_set(gens));

  // shared projection: drop the last coordinate / the two vertical columns
  ExactMatrix L(d, d + 1, f);
  for (int i = 0; i < d; ++i) L.at(i, i) = f->one();
  ExactMatrix H(n0, n0 + 2, f);
  for (int j = 0; j < n0; ++j) H.at(j, shift(j)) = f->one();

  // targets: the base itself and its star subdivision at the new column
  QuantumFan delta1 = star_subdivision(b0, k0, spec.center);
  return FanCobordism{total, sub0, sub1, CobordismProjection{L, H, b0},
                      CobordismProjection{L, H, delta1}};
}

// ---------------------------------------------------------------------------

namespace {

// extend a calibration by one column appended at the end (so that fans
// over the same column matrix stay directly comparable)
struct ExtendedFan {
  QuantumFan fan;
  int new_index;
};

ExtendedFan extend_with_column(const QuantumFan& fan, const Vec& column) {
  const Calibration& cal = fan.cal();
  for (int j = 0; j < cal.n(); ++j)
    if (cal.column(j) == column) return {fan, j};
  std::vector<Vec> cols;
  for (int j = 0; j < cal.n(); ++j) cols.push_back(cal.column(j));
  cols.push_back(column);
  Calibration cal2{ExactMatrix::from_columns(cols), cal.virtuals};
  return {QuantumFan(cal2, fan.max_cones(), fan.generators()), cal.n()};
}

}  // namespace

TransitionDiamond transition_fan(const FanCobordism& c, const Vec& alpha) {
  QuantumFan cat = catastrophe_fan(c);
  ConeGeom merged = catastrophe_merged_cone(c);
  if (!merged.contains_relative_interior(alpha))
    fail(ErrorCode::NotInterior, "alpha must lie in the relative interior of the merged cone");

  auto ext = extend_with_column(cat, alpha);
  // identify the merged cone inside the extended catastrophe fan
  IndexSet merged_set;
  for (const auto& cone : ext.fan.cones())
    if (ext.fan.geom_of(cone).equals(merged)) merged_set = cone;
  QuantumFan transition = star_subdivision(ext.fan, ext.new_index, merged_set);

  // the two ends over the same extended column matrix (the targets share
  // their columns with the catastrophe fan under the shared projection)
  QuantumFan end0 = extend_with_column(c.proj0.target, alpha).fan;
  QuantumFan end1 = extend_with_column(c.proj1.target, alpha).fan;

  const FieldPtr& f = ext.fan.cal().field();
  int d = cat.dim(), n = ext.fan.cal().n();
  auto edge = [&](const QuantumFan& src, const QuantumFan& dst) {
    BirationalFanMorphism m{src, dst, ExactMatrix::identity(d, f),
                            ExactMatrix::identity(n, f)};
    auto val = validate_birational(m);
    return DiamondEdge{m, val};
  };
  TransitionDiamond out{transition, ext.fan,       end0,
                        end1,       edge(transition, end0), edge(transition, end1),
                        edge(end0, ext.fan), edge(end1, ext.fan)};
  return out;
}

// ---------------------------------------------------------------------------

QuantumFan slice_family(const FanCobordism& c, const Scalar& t) {
  int s = t.sign();
  if (s == 0) return catastrophe_fan(c);
  const QuantumFan& side = s < 0 ? c.proj0.target : c.proj1.target;
  const QuantumFan& other = s < 0 ? c.proj1.target : c.proj0.target;
  // interpolate the end calibrations affinely in t over [-1, 1]
  const Calibration& h0 = c.proj0.target.cal();
  const Calibration& h1 = c.proj1.target.cal();
  const FieldPtr& f = h0.field();
  Scalar u = (t + f->one()) / f->from_int(2);
  ExactMatrix cols = h0.columns;
  for (int i = 0; i < cols.rows(); ++i)
    for (int j = 0; j < cols.cols(); ++j)
      cols.at(i, j) = (f->one() - u) * h0.columns.at(i, j) + u * h1.columns.at(i, j);
  (void)other;
  QuantumFan out(Calibration{cols, side.cal().virtuals}, side.max_cones(), side.generators());
  auto report = validate_fan(out);
  if (!report.ok())
    fail(ErrorCode::NotValid, "slice fan fails validation: " + report.violations[0].code);
  return out;
}

// ---------------------------------------------------------------------------

Scalar frobenius_distance_sq(const Calibration& a, const Calibration& b) {
  if (a.d() != b.d() || a.n() != b.n())
    fail(ErrorCode::DimensionMismatch, "calibration shapes differ");
  Scalar sum = a.field()->zero();
  for (int i = 0; i < a.d(); ++i)
    for (int j = 0; j < a.n(); ++j) {
      Scalar diff = a.columns.at(i, j) - b.columns.at(i, j);
      sum += diff * diff;
    }
  return sum;
}

FanCobordism deform_cobordism(const FanCobordism& c, const Calibration& h_new, int end) {
  if (end == 1) {
    FanCobordism swapped{c.total, c.sub1, c.sub0, c.proj1, c.proj0};
    FanCobordism out = deform_cobordism(swapped, h_new, 0);
    return FanCobordism{out.total, out.sub1, out.sub0, out.proj1, out.proj0};
  }
  const Calibration& h0_new = h_new;
  if (!c.shared_projection())
    fail(ErrorCode::NotValid, "deformation needs shared (L, H); normalize first");
  const Calibration& h0 = c.proj0.target.cal();
  if (h0_new.d() != h0.d() || h0_new.n() != h0.n())
    fail(ErrorCode::DimensionMismatch, "deformed calibration has the wrong shape");
  for (int j : h0.virtuals)
    if (!(h0_new.column(j) == h0.column(j)))
      fail(ErrorCode::VirtualMismatch,
           "the deformation must fix the virtual columns of the 0-end");
  {
    QuantumFan cand(Calibration{h0_new.columns, h0.virtuals}, c.proj0.target.max_cones(),
                    c.proj0.target.generators());
    auto rep = validate_fan(cand);
    if (!rep.ok())
      fail(ErrorCode::ChamberLeft,
           "the deformed end leaves the combinatorial chamber: " + rep.violations[0].code);
  }
  auto colmap = coordinate_projection_map(c.proj0.H);
  if (!colmap) fail(ErrorCode::NotValid, "H is not a coordinate projection");

  const Calibration& h = c.total.cal();
  ExactMatrix new_cols = h.columns;
  for (int j = 0; j < h.n(); ++j) {
    int tgt = (*colmap)[static_cast<std::size_t>(j)];
    if (tgt < 0) continue;  // columns killed by H keep their values
    Vec lifted = solve_affine_projection(c.proj0.L, h0_new.column(tgt), h.column(j));
    new_cols.set_col(j, lifted);
  }
  Calibration total_cal{new_cols, h.virtuals};
  QuantumFan total(total_cal, c.total.max_cones(), c.total.generators());
  QuantumFan t0(Calibration{h0_new.columns, h0.virtuals}, c.proj0.target.max_cones(),
                c.proj0.target.generators());
  QuantumFan t1(Calibration{h0_new.columns, c.proj1.target.cal().virtuals},
                c.proj1.target.max_cones(), c.proj1.target.generators());
  FanCobordism out{total, c.sub0, c.sub1, CobordismProjection{c.proj0.L, c.proj0.H, t0},
                   CobordismProjection{c.proj1.L, c.proj1.H, t1}};
  auto rep = validate_cobordism(out);
  if (!rep.ok())
    fail(ErrorCode::ChamberLeft,
         "the lifted cobordism fails revalidation: " + rep.violations[0].code);
  return out;
}

// ---------------------------------------------------------------------------

FanCobordism cobordism_from_polytope(const Polytope& w, int p_facet, int q_facet) {
  PolytopeCobordism pc = classify_cobordism(w, p_facet, q_facet);
  if (pc.kind != CobordismKind::Elementary)
    fail(ErrorCode::NotElementary, "the fan cobordism needs an elementary polytope cobordism");
  int D = w.ambient_dim();
  const FieldPtr& f = w.field();
  // normal-form requirement: the end facets are horizontal
  auto horizontal = [&](int fi) {
    const Vec& nrm = w.facets()[static_cast<std::size_t>(fi)].normal;
    for (int i = 0; i + 1 < D; ++i)
      if (!nrm[static_cast<std::size_t>(i)].is_zero()) return false;
    return true;
  };
  if (!horizontal(p_facet) || !horizontal(q_facet))
    fail(ErrorCode::NotValid, "end facets must be horizontal (conjugate the polytope first)");

  // columns: side-facet normals first (kept), then the two end normals
  std::vector<int> order;
  for (int fi = 0; fi < static_cast<int>(w.facets().size()); ++fi)
    if (fi != p_facet && fi != q_facet) order.push_back(fi);
  int kept = static_cast<int>(order.size());
  order.push_back(p_facet);
  order.push_back(q_facet);
  std::vector<int> pos(order.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i)
    pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  std::vector<Vec> cols;
  for (int fi : order) cols.push_back(w.facets()[static_cast<std::size_t>(fi)].normal);
  Calibration total_cal{ExactMatrix::from_columns(cols), {}};
  std::vector<IndexSet> max_cones;
  std::vector<int> sub0, sub1;
  for (std::size_t v = 0; v < w.vertices().size(); ++v) {
    IndexSet cgens;
    for (int fi : w.vertex_facets()[v]) cgens.push_back(pos[static_cast<std::size_t>(fi)]);
    max_cones.push_back(sorted_set(cgens));
    bool on_p = w.vertex_on_facet(static_cast<int>(v), p_facet);
    bool on_q = w.vertex_on_facet(static_cast<int>(v), q_facet);
    if (on_p) sub0.push_back(static_cast<int>(v));
    if (on_q) sub1.push_back(static_cast<int>(v));
  }
  std::vector<int> gens;
  for (int j = 0; j < total_cal.n(); ++j) gens.push_back(j);
  QuantumFan total(total_cal, max_cones, gens);

  ExactMatrix L(D - 1, D, f);
  for (int i = 0; i < D - 1; ++i) L.at(i, i) = f->one();
  ExactMatrix H(kept, kept + 2, f);
  for (int j = 0; j < kept; ++j) H.at(j, j) = f->one();

  // end fans: project the end-side cones, dropping the end normal
  auto end_fan = [&](int facet, const std::vector<int>& side) {
    std::vector<Vec> tcols;
    for (int j = 0; j < kept; ++j) {
      Vec cj = total_cal.column(j);
      tcols.push_back(Vec(cj.begin(), cj.end() - 1));
    }
    std::vector<IndexSet> cones;
    for (int vi : side) {
      IndexSet cgens;
      for (int fi : w.vertex_facets()[static_cast<std::size_t>(vi)])
        if (fi != facet) cgens.push_back(pos[static_cast<std::size_t>(fi)]);
      cones.push_back(sorted_set(cgens));
    }
    std::set<int> rays;
    for (const auto& cgens : cones)
      for (int j : cgens) rays.insert(j);
    std::vector<int> virt;
    for (int j = 0; j < kept; ++j)
      if (!rays.count(j)) virt.push_back(j);
    Calibration cal{ExactMatrix::from_columns(tcols), virt};
    return QuantumFan(cal, cones, std::vector<int>(rays.begin(), rays.end()));
  };
  QuantumFan d0 = end_fan(p_facet, sub0);
  QuantumFan d1 = end_fan(q_facet, sub1);
  return FanCobordism{total, sub0, sub1, CobordismProjection{L, H, d0},
                      CobordismProjection{L, H, d1}};
}

FanCobordism normalize_cobordism(const FanCobordism& c) {
  if (!c.shared_projection())
    fail(ErrorCode::NotValid, "normalization needs shared (L, H)");
  const FieldPtr& f = c.total.cal().field();
  int d1 = c.total.dim();
  // already in normal form?
  {
    ExactMatrix drop(d1 - 1, d1, f);
    for (int i = 0; i < d1 - 1; ++i) drop.at(i, i) = f->one();
    if (c.proj0.L == drop) return c;
  }
  // M = [L; w] invertible: extend the rows of L by a standard basis row
  std::vector<Vec> rows;
  for (int i = 0; i < c.proj0.L.rows(); ++i) rows.push_back(c.proj0.L.row(i));
  ExactMatrix M(0, 0, f);
  bool built = false;
  for (int i = 0; i < d1 && !built; ++i) {
    Vec e(static_cast<std::size_t>(d1), f->zero());
    e[static_cast<std::size_t>(i)] = f->one();
    auto cand = rows;
    cand.push_back(e);
    ExactMatrix candM = ExactMatrix::from_rows(cand);
    if (candM.rank() == d1) {
      M = candM;
      built = true;
    }
  }
  if (!built) fail(ErrorCode::NotValid, "L cannot be completed to an isomorphism");
  Calibration cal{M * c.total.cal().columns, c.total.cal().virtuals};
  QuantumFan total(cal, c.total.max_cones(), c.total.generators());
  ExactMatrix drop(d1 - 1, d1, f);
  for (int i = 0; i < d1 - 1; ++i) drop.at(i, i) = f->one();
  return FanCobordism{total, c.sub0, c.sub1,
                      CobordismProjection{drop, c.proj0.H, c.proj0.target},
                      CobordismProjection{drop, c.proj1.H, c.proj1.target}};
}

}  // namespace qfan
