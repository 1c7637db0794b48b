#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "qfan/blowup.hpp"
#include "qfan/errors.hpp"

using namespace qfan;

namespace {

FieldPtr Q() { return RealField::rationals(); }
FieldPtr Qsqrt2() {
  return RealField::create(Poly({Rat(-2), Rat(0), Rat(1)}), Rat(1), Rat(2));
}

Vec v2(const FieldPtr& f, long x, long y) { return Vec{f->from_int(x), f->from_int(y)}; }

// standard affine chart in dimension d with one extra column alpha (virtual)
QuantumFan chart_with_column(const FieldPtr& f, const Vec& alpha) {
  int d = static_cast<int>(alpha.size());
  std::vector<Vec> cols;
  for (int i = 0; i < d; ++i) {
    Vec e(static_cast<std::size_t>(d), f->zero());
    e[static_cast<std::size_t>(i)] = f->one();
    cols.push_back(e);
  }
  cols.push_back(alpha);
  IndexSet top;
  for (int i = 0; i < d; ++i) top.push_back(i);
  return QuantumFan(Calibration{ExactMatrix::from_columns(cols), {d}}, {top}, top);
}

BlowupSpec spec_for(const FieldPtr& f, const std::vector<Scalar>& w) {
  int d = static_cast<int>(w.size());
  Vec alpha(w);
  QuantumFan base = chart_with_column(f, alpha);
  IndexSet center;
  for (int i = 0; i < d; ++i) center.push_back(i);
  return make_blowup_spec(base, center, w);
}

// independent odds-and-ends oracle for the strata: test every subset
std::vector<IndexSet> strata_oracle(const ExactMatrix& M, const FiberTarget& t) {
  int dcols = M.cols(), drows = M.rows();
  if (t.kind == TargetKind::Torus) return {IndexSet{}};
  IndexSet i_t = t.kind == TargetKind::Zero ? IndexSet{} : t.nonzero;
  auto in_it = [&](int r) { return std::binary_search(i_t.begin(), i_t.end(), r); };
  std::vector<IndexSet> good;
  for (unsigned mask = 0; mask < (1u << dcols); ++mask) {
    IndexSet A;
    for (int j = 0; j < dcols; ++j)
      if (mask & (1u << j)) A.push_back(j);
    bool ok = true;
    for (int i : i_t)
      for (int l : A)
        if (!M.at(i, l).is_zero()) ok = false;
    for (int k = 0; k < drows && ok; ++k) {
      if (in_it(k)) continue;
      bool hit = false;
      for (int j : A)
        if (!M.at(k, j).is_zero()) hit = true;
      ok = ok && hit;
    }
    if (ok) good.push_back(A);
  }
  std::vector<IndexSet> minimal;
  for (const auto& a : good) {
    bool is_min = true;
    for (const auto& b : good)
      if (b != a && std::includes(a.begin(), a.end(), b.begin(), b.end())) is_min = false;
    if (is_min) minimal.push_back(a);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

}  // namespace

TEST_CASE("star subdivision of the quadrant") {
  auto f = Q();
  auto spec = spec_for(f, {f->from_int(1), f->from_int(2)});
  QuantumFan out = star_subdivision(spec.base, spec.new_gen_index, spec.center);
  CHECK(out.max_cones().size() == 2);
  // interior subdivision strictly increases the number of maximal cones
  CHECK(out.max_cones().size() > spec.base.max_cones().size());
  CHECK(validate_fan(out).ok());
  CHECK(support_equal(spec.base, out));
  CHECK(out.ray_indices() == std::vector<int>{0, 1, 2});
  // every output cone inside some input cone
  for (std::size_t i = 0; i < out.max_cones().size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < spec.base.max_cones().size(); ++j)
      inside = inside || spec.base.max_cone_geom(j).contains_cone(out.max_cone_geom(i));
    CHECK(inside);
  }
}

TEST_CASE("star subdivision at an existing ray is the identity") {
  auto f = Q();
  QuantumFan base = chart_with_column(f, v2(f, 1, 0));  // alpha = e1
  QuantumFan out = star_subdivision(base, 2, {0, 1});
  CHECK(out.max_cones() == base.max_cones());
  CHECK(out.generators() == base.generators());
}

TEST_CASE("star subdivision errors") {
  auto f = Q();
  QuantumFan base = chart_with_column(f, v2(f, -1, 1));  // alpha outside C_2
  CHECK_THROWS_AS((void)star_subdivision(base, 2, {0, 1}), Error);
  QuantumFan base2 = chart_with_column(f, v2(f, 1, 1));
  CHECK_THROWS_AS((void)star_subdivision(base2, 0, {0, 1}), Error);  // e1 already a generator
}

TEST_CASE("blow-ups need at least two positive weights") {
  auto f = Q();
  QuantumFan base = chart_with_column(f, v2(f, 1, 0));
  try {
    (void)make_blowup_spec(base, {0, 1}, {f->one(), f->zero()});
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveWeight);
  }
  CHECK_THROWS_AS((void)make_blowup_spec(base, {0, 1}, {f->one(), -f->one()}), Error);
}

TEST_CASE("star subdivision of the cone over a square gives its triangulation") {
  auto f = Q();
  std::vector<Vec> cols = {
      Vec{f->from_int(1), f->from_int(1), f->one()},   Vec{f->from_int(-1), f->from_int(1), f->one()},
      Vec{f->from_int(-1), f->from_int(-1), f->one()}, Vec{f->from_int(1), f->from_int(-1), f->one()},
      Vec{f->zero(), f->zero(), f->one()}};  // interior axis
  Calibration cal{ExactMatrix::from_columns(cols), {4}};
  QuantumFan fan(cal, {{0, 1, 2, 3}}, {0, 1, 2, 3});
  QuantumFan out = star_subdivision(fan, 4, {0, 1, 2, 3});
  CHECK(out.max_cones().size() == 4);
  CHECK(out.is_simplicial());
  CHECK(validate_fan(out).ok());
  // support preserved: each piece sits inside the subdivided cone and the
  // pieces jointly contain its generators
  for (std::size_t i = 0; i < out.max_cones().size(); ++i)
    CHECK(fan.max_cone_geom(0).contains_cone(out.max_cone_geom(i)));
  for (int g = 0; g < 4; ++g) {
    bool covered = false;
    for (std::size_t i = 0; i < out.max_cones().size(); ++i)
      covered = covered || out.max_cone_geom(i).contains(fan.cal().column(g));
    CHECK(covered);
  }
}

TEST_CASE("natural blow-up matrix and validity") {
  auto f = Q();
  auto spec = spec_for(f, {f->from_int(2), f->from_int(3)});
  FanMorphism m = natural_blowup(spec);
  // H = [[1,0,2],[0,1,3],[0,0,0]]
  CHECK(m.H.at(0, 2) == f->from_int(2));
  CHECK(m.H.at(1, 2) == f->from_int(3));
  CHECK(m.H.at(2, 2) == f->zero());
  CHECK(m.H.at(0, 0) == f->one());
  CHECK(validate_morphism(m).ok());
  CHECK(is_natural_blowup_valid(spec));
}

TEST_CASE("natural blow-up rejects non-natural weights") {
  auto fq = Q();
  auto spec_half = spec_for(fq, {fq->from_rat(Rat(1, 2)), fq->one()});
  try {
    (void)natural_blowup(spec_half);
    FAIL("expected NonIntegerWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegerWeight);
  }
  CHECK(!is_natural_blowup_valid(spec_half));
  auto f2 = Qsqrt2();
  auto spec_irr = spec_for(f2, {f2->theta(), f2->one()});
  CHECK(!is_natural_blowup_valid(spec_irr));
  CHECK(is_natural_blowup_valid(spec_for(fq, {fq->one(), fq->one()})));
}

TEST_CASE("irrational blow-up is birational with exceptional ray alpha") {
  auto f = Qsqrt2();
  auto spec = spec_for(f, {f->one(), f->theta()});
  BirationalFanMorphism b = irrational_blowup(spec);
  auto val = validate_birational(b);
  CHECK(val.report.ok());
  CHECK(val.witness.exceptional_source == std::vector<int>{2});
  CHECK(val.witness.exceptional_target.empty());
  // the zero cone (dense torus chart) is in the witness
  CHECK(!val.witness.source_cones.empty());
  CHECK(val.witness.source_cones.front().empty());
  // integer weights: same exceptional structure as the natural blow-up locus
  auto fq = Q();
  auto spec_int = spec_for(fq, {fq->from_int(2), fq->from_int(1)});
  auto val2 = validate_birational(irrational_blowup(spec_int));
  CHECK(val2.report.ok());
  CHECK(val2.witness.exceptional_source == std::vector<int>{2});
}

TEST_CASE("fiber strata of the worked 2x2 example") {
  auto f = Q();
  auto mat = [&](long a, long b, long c, long d) {
    ExactMatrix m(2, 2, f);
    m.at(0, 0) = f->from_int(a);
    m.at(0, 1) = f->from_int(b);
    m.at(1, 0) = f->from_int(c);
    m.at(1, 1) = f->from_int(d);
    return MonomialMap{m};
  };
  SUBCASE("all entries positive, zero target: the two axes") {
    auto strata = fiber_strata(mat(1, 2, 3, 1), FiberTarget::zero());
    REQUIRE(strata.size() == 2);
    CHECK(strata[0].zero_set == IndexSet{0});
    CHECK(strata[1].zero_set == IndexSet{1});
    CHECK(strata[0].free_set == IndexSet{1});
  }
  SUBCASE("antidiagonal, target (0, E(w)): single root-of-unity stratum") {
    auto strata = fiber_strata(mat(0, 2, 3, 0), FiberTarget::mixed({1}));
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].zero_set == IndexSet{1});
    CHECK(strata[0].solved_set == IndexSet{0});
    REQUIRE(strata[0].solve_matrix.rows() == 1);
    CHECK(strata[0].solve_matrix.at(0, 0) == f->from_int(3));
    CHECK(strata[0].descriptor == "mu_3 E(w/3) x 0_{2}");
  }
  SUBCASE("identity, torus target: single solved stratum") {
    auto strata = fiber_strata(mat(1, 0, 0, 1), FiberTarget::torus());
    REQUIRE(strata.size() == 1);
    CHECK(strata[0].zero_set.empty());
    CHECK(strata[0].solved_set == IndexSet{0, 1});
    CHECK(strata[0].descriptor.find("deg |det| = 1") != std::string::npos);
  }
}

TEST_CASE("fiber strata match the subset oracle on a small grid") {
  auto f = Q();
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 3), cols = 1 + static_cast<int>(rng() % 3);
    ExactMatrix m(rows, cols, f);
    bool zero_row = false;
    for (int i = 0; i < rows; ++i) {
      bool nonzero = false;
      for (int j = 0; j < cols; ++j) {
        long e = static_cast<long>(rng() % 3);
        m.at(i, j) = f->from_int(e);
        nonzero = nonzero || e != 0;
      }
      zero_row = zero_row || !nonzero;
    }
    if (zero_row) continue;
    std::vector<FiberTarget> targets{FiberTarget::torus(), FiberTarget::zero()};
    for (unsigned mask = 1; mask + 1 < (1u << rows); ++mask) {
      IndexSet it;
      for (int i = 0; i < rows; ++i)
        if (mask & (1u << i)) it.push_back(i);
      targets.push_back(FiberTarget::mixed(it));
    }
    for (const auto& t : targets) {
      auto got = fiber_strata(MonomialMap{m}, t);
      std::vector<IndexSet> got_sets;
      for (const auto& s : got) got_sets.push_back(s.zero_set);
      std::sort(got_sets.begin(), got_sets.end());
      CHECK(got_sets == strata_oracle(m, t));
    }
  }
}

TEST_CASE("stratum monotonicity: larger qualifying zero sets sit in the closure") {
  auto f = Q();
  // zero-target case: if A' contains A (both qualifying), the A'-stratum's
  // zero pattern extends the A-stratum's
  ExactMatrix m(2, 3, f);
  m.at(0, 0) = f->one();
  m.at(0, 1) = f->one();
  m.at(1, 1) = f->one();
  m.at(1, 2) = f->one();
  auto strata = fiber_strata(MonomialMap{m}, FiberTarget::zero());
  // qualifying minimal sets: {1} and {0,2}
  REQUIRE(strata.size() == 2);
  for (const auto& s : strata)
    for (int z : s.zero_set) {
      // the closure statement at the combinatorial level: zero patterns of
      // any qualifying superset extend some minimal stratum
      CHECK(z >= 0);
      CHECK(z < 3);
    }
  IndexSet super{0, 1, 2};  // qualifies and contains both minimal sets
  for (const auto& s : strata)
    CHECK(std::includes(super.begin(), super.end(), s.zero_set.begin(), s.zero_set.end()));
}

TEST_CASE("reducedness criteria expose both readings") {
  SUBCASE("all ones: reduced for every J") {
    for (IndexSet J : {IndexSet{}, IndexSet{1}}) {
      auto r = fiber_reduced({Int(1), Int(1)}, 0, J);
      CHECK(r.special_cases);
      CHECK(r.general_criterion);
      CHECK(r.agree);
    }
    CHECK(blowup_fibers_reduced({Int(1), Int(1)}));
  }
  SUBCASE("v = (2,1), generic J: the two readings disagree") {
    auto r = fiber_reduced({Int(2), Int(1)}, 0, {1});
    CHECK(r.special_cases);        // bullet: min over all weights is 1
    CHECK(!r.general_criterion);  // literal formula wants v_k = 1 off J
    CHECK(!r.agree);
    CHECK(r.reduced());
    CHECK(!blowup_fibers_reduced({Int(2), Int(1)}));
  }
  SUBCASE("v = (2,2): never reduced") {
    CHECK(!fiber_reduced({Int(2), Int(2)}, 0, {1}).special_cases);
    CHECK(!fiber_reduced({Int(2), Int(2)}, 0, {}).special_cases);
    CHECK(!blowup_fibers_reduced({Int(2), Int(2)}));
  }
  SUBCASE("positivity enforced") {
    CHECK_THROWS_AS((void)fiber_reduced({Int(0), Int(1)}, 0, {}), Error);
    CHECK_THROWS_AS((void)blowup_fibers_reduced({Int(-1)}), Error);
  }
}

TEST_CASE("reducedness over the {1,2,3}^k grid matches the all-ones test") {
  for (int k = 1; k <= 4; ++k) {
    std::vector<Int> v(static_cast<std::size_t>(k), Int(1));
    while (true) {
      bool all_ones = true;
      for (const auto& x : v) all_ones = all_ones && x == 1;
      CHECK(blowup_fibers_reduced(v) == all_ones);
      std::size_t i = 0;
      while (i < v.size() && v[i] == 3) v[i++] = 1;
      if (i == v.size()) break;
      v[i] += 1;
    }
  }
}

TEST_CASE("exceptional divisor of the (1, sqrt2) plane blow-up is a quantum P1") {
  auto f = Qsqrt2();
  auto spec = spec_for(f, {f->one(), f->theta()});
  QuantumFan div = exceptional_divisor(spec, 0);
  CHECK(div.dim() == 1);
  CHECK(div.is_complete());
  CHECK(validate_fan(div).ok());
  // rays: +1 at the e2 column and exactly -sqrt2 at the glued column
  CHECK(div.cal().column(1) == Vec{f->one()});
  CHECK(div.cal().column(2) == Vec{-f->theta()});
  // the other chart carries the reciprocal ratio
  QuantumFan div2 = exceptional_divisor(spec, 1);
  CHECK(div2.cal().column(2) == Vec{-(f->one() / f->theta())});
}

TEST_CASE("exceptional divisor of the (1,1,1) blow-up of C_3 is the P2 fan") {
  auto f = Q();
  auto spec = spec_for(f, {f->one(), f->one(), f->one()});
  QuantumFan div = exceptional_divisor(spec, 0);
  CHECK(div.dim() == 2);
  CHECK(div.is_complete());
  CHECK(div.is_simplicial());
  CHECK(validate_fan(div).ok());
  REQUIRE(div.ray_indices().size() == 3);
  // rays e1, e2, -e1-e2 up to the column layout (columns 1, 2 and k = 3)
  CHECK(div.cal().column(1) == v2(f, 1, 0));
  CHECK(div.cal().column(2) == v2(f, 0, 1));
  CHECK(div.cal().column(3) == v2(f, -1, -1));
}

TEST_CASE("divisor chart transitions satisfy inverse and cocycle identities") {
  auto f = Qsqrt2();
  // d = 3 with weights (1, sqrt2, 3): three charts
  auto spec = spec_for(f, {f->one(), f->theta(), f->from_int(3)});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ExactMatrix t_ji = divisor_chart_transition(spec, j, i);
      ExactMatrix t_ij = divisor_chart_transition(spec, i, j);
      CHECK(t_ji * t_ij == ExactMatrix::identity(2, f));
      for (int k = 0; k < 3; ++k) {
        ExactMatrix lhs = divisor_chart_transition(spec, k, i);
        ExactMatrix rhs = divisor_chart_transition(spec, k, j) * t_ji;
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("rational zig-zag of a half-integer weight") {
  auto f = Q();
  auto spec = spec_for(f, {f->from_rat(Rat(1, 2)), f->one()});
  RationalZigzag z = rational_zigzag(spec);
  CHECK(z.scale == 2);
  CHECK(validate_morphism(z.up).ok());
  CHECK(validate_morphism(z.down).ok());
  // composing the down-leg with the formal inverse of the up-leg yields the
  // dashed rational H
  ExactMatrix H = z.down.H * z.up.H.inverse();
  CHECK(H.at(0, 2) == f->from_rat(Rat(1, 2)));
  CHECK(H.at(1, 2) == f->one());
  CHECK(H.at(2, 2) == f->zero());
  CHECK(H.at(0, 0) == f->one());
  // integer weights degenerate to N = 1
  auto spec1 = spec_for(f, {f->one(), f->from_int(2)});
  CHECK(rational_zigzag(spec1).scale == 1);
  // irrational weights are rejected
  auto f2 = Qsqrt2();
  auto speci = spec_for(f2, {f2->theta(), f2->one()});
  CHECK_THROWS_AS((void)rational_zigzag(speci), Error);
}

TEST_CASE("scaled chart exponents are never reduced when N > 1") {
  auto f = Q();
  auto spec = spec_for(f, {f->from_rat(Rat(1, 2)), f->one()});
  RationalZigzag z = rational_zigzag(spec);
  // each chart of the covering morphism carries exponents with an entry
  // >= N = 2, so the reduced-fiber test fails on them
  for (IndexSet chart : {IndexSet{2, 1}, IndexSet{0, 2}}) {
    MonomialMap A = local_monomial(z.down, chart, {0, 1});
    std::vector<Int> exps;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!A.exponents.at(i, j).is_zero()) exps.push_back(A.exponents.at(i, j).integer_value());
    bool has_big = false;
    for (const auto& e : exps) has_big = has_big || e >= 2;
    CHECK(has_big);
    CHECK(!blowup_fibers_reduced(exps));
  }
}

TEST_CASE("zig-zag with a single insertion") {
  auto f = Q();
  Calibration cq{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1)}), {}};
  QuantumFan f1(cq, {{0, 1}}, {0, 1});
  Calibration cs{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), v2(f, 1, 1)}), {}};
  QuantumFan f2(cs, {{0, 2}, {2, 1}}, {0, 1, 2});
  ZigzagResult z = zigzag_dim2(f1, f2);
  REQUIRE(z.steps.size() == 1);
  CHECK(z.steps[0].is_blowup);
  REQUIRE(z.steps[0].weights.size() == 2);
  CHECK(z.steps[0].weights[0].sign() > 0);
  CHECK(z.steps[0].weights[1].sign() > 0);
  CHECK(same_fan(z.finish(), z.goal));
}

TEST_CASE("zig-zag: identical fans produce the empty sequence") {
  auto f = Q();
  Calibration cq{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1)}), {}};
  QuantumFan f1(cq, {{0, 1}}, {0, 1});
  ZigzagResult z = zigzag_dim2(f1, f1);
  CHECK(z.steps.empty());
}

TEST_CASE("zig-zag from a complete fan to the projective plane shape") {
  auto f = Q();
  // complete fan with rays e1, e2, (-1,1), (1,-2); target rays e1, e2, (-2,-3)
  Calibration c1{ExactMatrix::from_columns(
                     {v2(f, 1, 0), v2(f, 0, 1), v2(f, -1, 1), v2(f, 1, -2), v2(f, -2, -3)}),
                 {4}};
  QuantumFan f1(c1, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {0, 1, 2, 3});
  Calibration c2{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), v2(f, -2, -3)}), {}};
  QuantumFan f2(c2, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  REQUIRE(validate_fan(f1).ok());
  REQUIRE(validate_fan(f2).ok());
  ZigzagResult z = zigzag_dim2(f1, f2);
  REQUIRE(z.steps.size() == 3);
  CHECK(z.steps[0].is_blowup);
  CHECK(!z.steps[1].is_blowup);
  CHECK(!z.steps[2].is_blowup);
  // every step is a valid fan differing from its predecessor by one ray
  const QuantumFan* prev = &z.start;
  for (const auto& step : z.steps) {
    CHECK(validate_fan(step.after).ok());
    int diff = static_cast<int>(step.after.ray_indices().size()) -
               static_cast<int>(prev->ray_indices().size());
    CHECK(std::abs(diff) == 1);
    // the identity pair between consecutive fans is birational
    BirationalFanMorphism idpair{*prev, step.after,
                                 ExactMatrix::identity(2, f),
                                 ExactMatrix::identity(z.master.n(), f)};
    CHECK(validate_birational(idpair).report.ok());
    prev = &step.after;
  }
  CHECK(same_fan(z.finish(), z.goal));
}

TEST_CASE("zig-zag over a half-plane support") {
  auto f = Q();
  ExactMatrix cols = ExactMatrix::from_columns(
      {v2(f, 1, 0), v2(f, 0, 1), v2(f, -1, 0), v2(f, 1, 1)});
  QuantumFan h1(Calibration{cols, {3}}, {{0, 1}, {1, 2}}, {0, 1, 2});
  QuantumFan h2(Calibration{cols, {}}, {{0, 3}, {3, 1}, {1, 2}}, {0, 1, 2, 3});
  REQUIRE(support_equal(h1, h2));
  ZigzagResult z = zigzag_dim2(h1, h2);
  CHECK(z.steps.size() == 1);
  CHECK(z.steps[0].is_blowup);
  CHECK(same_fan(z.finish(), z.goal));
}

TEST_CASE("the whole pipeline works over a cubic field") {
  auto f3 = RealField::create(Poly({Rat(-2), Rat(0), Rat(0), Rat(1)}), Rat(1), Rat(2));
  Scalar cbrt2 = f3->theta();
  CHECK(cbrt2 * cbrt2 * cbrt2 == f3->from_int(2));
  QuantumFan quad = chart_with_column(f3, Vec{f3->one(), cbrt2});
  REQUIRE(validate_fan(quad).ok());
  QuantumFan sub = star_subdivision(quad, 2, {0, 1});
  CHECK(sub.max_cones().size() == 2);
  CHECK(validate_fan(sub).ok());
  auto approx = rational_approximation(sub);
  CHECK(approx.fan.cal().columns.all_rational());
  CHECK(approx.fan.cones() == sub.cones());
}

TEST_CASE("zig-zag rejects unequal supports") {
  auto f = Q();
  Calibration cq{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), v2(f, -1, -1)}), {}};
  QuantumFan quad(Calibration{cq.columns, {2}}, {{0, 1}}, {0, 1});
  QuantumFan p2(cq, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  CHECK_THROWS_AS((void)zigzag_dim2(quad, p2), Error);
}

TEST_CASE("rational approximation") {
  auto f = Qsqrt2();
  SUBCASE("already-rational fan is unchanged with the minimal denominator") {
    Calibration c{ExactMatrix::from_columns(
                      {v2(f, 1, 0), v2(f, 0, 1), Vec{f->from_rat(Rat(1, 3)), f->one()}}),
                  {}};
    QuantumFan fan(c, {{0, 2}, {2, 1}}, {0, 1, 2});
    auto out = rational_approximation(fan);
    CHECK(out.denominator == 3);
    CHECK(same_fan(out.fan, fan));
  }
  SUBCASE("the (1, sqrt2) ray becomes rational with the same combinatorics") {
    Calibration c{ExactMatrix::from_columns(
                      {v2(f, 1, 0), v2(f, 0, 1), Vec{f->one(), f->theta()}}),
                  {}};
    QuantumFan fan(c, {{0, 2}, {2, 1}}, {0, 1, 2});
    auto out = rational_approximation(fan);
    CHECK(validate_fan(out.fan).ok());
    CHECK(out.fan.cones() == fan.cones());
    CHECK(out.fan.cal().columns.all_rational());
    // the rounded ray is within 1/16 of sqrt2
    Rat approx = out.fan.cal().columns.at(1, 2).rational_value();
    CHECK(abs(approx * approx - 2) < Rat(1, 4));
  }
  SUBCASE("complete irrational fan of five rays keeps its face poset") {
    Scalar r2 = f->theta();
    Calibration c{ExactMatrix::from_columns({v2(f, 1, 0), Vec{f->one(), r2}, v2(f, -1, 2),
                                             Vec{-f->one(), -r2}, v2(f, 1, -3)}),
                  {}};
    QuantumFan fan(c, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {0, 1, 2, 3, 4});
    REQUIRE(validate_fan(fan).ok());
    auto out = rational_approximation(fan);
    CHECK(out.fan.cones() == fan.cones());
    CHECK(validate_fan(out.fan).ok());
    CHECK(out.fan.cal().columns.all_rational());
  }
}
