#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfan/errors.hpp"
#include "qfan/fan_maps.hpp"

using namespace qfan;

namespace {

FieldPtr Q() { return RealField::rationals(); }
FieldPtr Qsqrt2() {
  return RealField::create(Poly({Rat(-2), Rat(0), Rat(1)}), Rat(1), Rat(2));
}

Vec v2(const FieldPtr& f, long x, long y) { return Vec{f->from_int(x), f->from_int(y)}; }

Calibration cal3(const FieldPtr& f, const Vec& third, std::vector<int> virtuals) {
  return Calibration{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), third}),
                     sorted_set(std::move(virtuals))};
}

// target: face fan of the first quadrant with a virtual third column v
QuantumFan plane_fan(const FieldPtr& f, const Vec& v) {
  return QuantumFan(cal3(f, v, {2}), {{0, 1}}, {0, 1});
}

// source: the subdivided quadrant with max cones (e1,v),(v,e2)
QuantumFan star_fan(const FieldPtr& f, const Vec& v) {
  return QuantumFan(cal3(f, v, {}), {{0, 2}, {2, 1}}, {0, 1, 2});
}

// the natural blow-up pair (id, H) of the toy example
FanMorphism toy_morphism(const FieldPtr& f, const Scalar& a, const Scalar& b) {
  Vec v{a, b};
  ExactMatrix H(3, 3, f);
  H.at(0, 0) = f->one();
  H.at(1, 1) = f->one();
  H.at(0, 2) = a;
  H.at(1, 2) = b;
  return FanMorphism{star_fan(f, v), plane_fan(f, v), ExactMatrix::identity(2, f), H};
}

}  // namespace

TEST_CASE("toy blow-up morphism is valid exactly for natural weights") {
  auto f = Qsqrt2();
  SUBCASE("v = (1,2) is a quantum fan morphism") {
    auto m = toy_morphism(f, f->from_int(1), f->from_int(2));
    CHECK(validate_morphism(m).ok());
  }
  SUBCASE("v = (1/2, 1) fails: H not integral") {
    auto m = toy_morphism(f, f->from_rat(Rat(1, 2)), f->one());
    auto r = validate_morphism(m);
    CHECK(!r.ok());
    CHECK(r.has("HNotIntegral"));
  }
  SUBCASE("v = (sqrt2, 1) fails") {
    auto m = toy_morphism(f, f->theta(), f->one());
    auto r = validate_morphism(m);
    CHECK(!r.ok());
    CHECK(r.has("HNotIntegral"));
    // and no integer H can close the diagram: try the rounded one
    m.H.at(0, 2) = f->one();
    auto r2 = validate_morphism(m);
    CHECK(r2.has("DiagramNotCommuting"));
  }
}

TEST_CASE("validate_morphism reports virtual leaks and unmapped cones") {
  auto f = Q();
  SUBCASE("virtual leak") {
    Vec v = v2(f, 1, 1);
    FanMorphism leak{plane_fan(f, v), plane_fan(f, v), ExactMatrix::identity(2, f),
                     ExactMatrix::identity(3, f)};
    leak.H.at(2, 2) = f->zero();
    leak.H.at(0, 2) = f->one();
    auto r = validate_morphism(leak);
    CHECK(r.has("VirtualLeak"));
  }
  SUBCASE("cone with no container") {
    Calibration cal{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), v2(f, -1, -1)}), {}};
    QuantumFan p2(cal, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
    QuantumFan quad(Calibration{cal.columns, {2}}, {{0, 1}}, {0, 1});
    FanMorphism bad{p2, quad, ExactMatrix::identity(2, f), ExactMatrix::identity(3, f)};
    auto r = validate_morphism(bad);
    CHECK(r.has("ConeNotMapped"));
  }
}

TEST_CASE("local_monomial reproduces the blow-up charts") {
  auto f = Q();
  Scalar a = f->from_int(2), b = f->from_int(3);
  auto m = toy_morphism(f, a, b);
  // chart 1: cone (v, e2) with v in first position; target the quadrant
  MonomialMap A1 = local_monomial(m, {2, 1}, {0, 1});
  CHECK(A1.exponents.at(0, 0) == a);
  CHECK(A1.exponents.at(1, 0) == b);
  CHECK(A1.exponents.at(0, 1) == f->zero());
  CHECK(A1.exponents.at(1, 1) == f->one());
  // chart 2: cone (e1, v)
  MonomialMap A2 = local_monomial(m, {0, 2}, {0, 1});
  CHECK(A2.exponents.at(0, 0) == f->one());
  CHECK(A2.exponents.at(0, 1) == a);
  CHECK(A2.exponents.at(1, 1) == b);

  // identity chart
  FanMorphism idm{plane_fan(f, v2(f, 1, 1)), plane_fan(f, v2(f, 1, 1)),
                  ExactMatrix::identity(2, f), ExactMatrix::identity(3, f)};
  MonomialMap I = local_monomial(idm, {0, 1}, {0, 1});
  CHECK(I.exponents == ExactMatrix::identity(2, f));

  // a full 2x2 integer L on standard cones gives L itself
  FanMorphism lin{plane_fan(f, v2(f, 1, 1)), plane_fan(f, v2(f, 3, 2)),
                  ExactMatrix::identity(2, f), ExactMatrix::identity(3, f)};
  lin.L.at(0, 0) = f->from_int(1);
  lin.L.at(0, 1) = f->from_int(1);
  lin.L.at(1, 0) = f->from_int(1);
  lin.L.at(1, 1) = f->from_int(2);
  MonomialMap M = local_monomial(lin, {0, 1}, {0, 1});
  CHECK(M.exponents == lin.L);
}

TEST_CASE("local_monomial error paths") {
  auto f = Qsqrt2();
  // irrational weight surfaces as NonIntegral
  auto m = toy_morphism(f, f->theta(), f->one());
  try {
    (void)local_monomial(m, {2, 1}, {0, 1});
    FAIL("expected NonIntegral");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegral);
  }
  // NotContained when the image cone leaves the target chart
  auto good = toy_morphism(f, f->one(), f->one());
  ExactMatrix flip = ExactMatrix::identity(2, f);
  flip.at(0, 0) = -f->one();
  good.L = flip;
  CHECK_THROWS_AS((void)local_monomial(good, {0, 1}, {0, 1}), Error);
}

TEST_CASE("local monomial maps compose") {
  auto f = Q();
  Scalar a = f->from_int(1), b = f->from_int(2);
  auto m1 = toy_morphism(f, a, b);
  // m2: doubling morphism of the plane fan (L = 2I, H = 2I)
  Vec v{a, b};
  FanMorphism m2{plane_fan(f, v), plane_fan(f, v), ExactMatrix::identity(2, f),
                 ExactMatrix::identity(3, f)};
  for (int i = 0; i < 2; ++i) m2.L.at(i, i) = f->from_int(2);
  for (int i = 0; i < 3; ++i) m2.H.at(i, i) = f->from_int(2);
  CHECK(validate_morphism(m2).ok());
  FanMorphism m21{m1.source, m2.target, m2.L * m1.L, m2.H * m1.H};
  CHECK(validate_morphism(m21).ok());
  for (IndexSet chart : {IndexSet{2, 1}, IndexSet{0, 2}}) {
    MonomialMap lhs = local_monomial(m21, chart, {0, 1});
    MonomialMap rhs = monomial_compose(local_monomial(m2, {0, 1}, {0, 1}),
                                       local_monomial(m1, chart, {0, 1}));
    CHECK(lhs.exponents == rhs.exponents);
  }
}

TEST_CASE("gale transform spec examples") {
  auto f = Q();
  // P^2 calibration -> k = (1,1,1)^T
  Calibration p2{ExactMatrix::from_columns({v2(f, 1, 0), v2(f, 0, 1), v2(f, -1, -1)}), {}};
  ExactMatrix k = gale_transform(p2);
  REQUIRE(k.cols() == 1);
  CHECK(vec_positive_multiple(k.col(0), Vec{f->one(), f->one(), f->one()}));
  // h = identity -> empty
  Calibration idc{ExactMatrix::identity(3, f), {}};
  CHECK(gale_transform(idc).cols() == 0);
  // irrational column
  auto f2 = Qsqrt2();
  Calibration irr{ExactMatrix::from_columns(
                      {v2(f2, 1, 0), v2(f2, 0, 1), Vec{f2->one(), f2->theta()}}),
                  {}};
  ExactMatrix k2 = gale_transform(irr);
  REQUIRE(k2.cols() == 1);
  // h k = 0 exactly
  CHECK(vec_is_zero(irr.columns.apply(k2.col(0))));
  // direction (1, sqrt2, -1) up to scale
  Vec expect{f2->one(), f2->theta(), -f2->one()};
  CHECK((vec_positive_multiple(k2.col(0), expect) ||
         vec_positive_multiple(vec_scale(-f2->one(), k2.col(0)), expect)));
}

TEST_CASE("gale exactness on random calibrations") {
  auto f = Qsqrt2();
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> d(-3, 3);
  int built = 0;
  while (built < 30) {
    int dim = 2 + static_cast<int>(rng() % 3);
    int n = dim + 1 + static_cast<int>(rng() % 3);
    ExactMatrix h(dim, n, f);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < n; ++j)
        h.at(i, j) = f->scalar({Rat(d(rng)), Rat((rng() % 4 == 0) ? d(rng) : 0)});
    if (h.rank() != dim) continue;
    ++built;
    Calibration cal{h, {}};
    ExactMatrix k = gale_transform(cal);
    CHECK(k.cols() == n - dim);
    CHECK(k.rank() == n - dim);
    ExactMatrix prod = h * k;
    for (int i = 0; i < prod.rows(); ++i)
      for (int j = 0; j < prod.cols(); ++j) CHECK(prod.at(i, j).is_zero());
  }
}

TEST_CASE("s_delta patterns") {
  auto f = Q();
  // blown-up plane: records ({1,3},{2}) and ({2,3},{1})
  auto fan = star_fan(f, v2(f, 1, 2));
  auto pats = s_delta(fan);
  REQUIRE(pats.size() == 2);
  CHECK(pats[0].zero_allowed == IndexSet{0, 2});
  CHECK(pats[0].nonzero_required == IndexSet{1});
  CHECK(pats[1].zero_allowed == IndexSet{1, 2});
  CHECK(pats[1].nonzero_required == IndexSet{0});
  // plane fan with virtual third generator: ({1,2},{3})
  auto plane = plane_fan(f, v2(f, 1, 2));
  auto pats2 = s_delta(plane);
  REQUIRE(pats2.size() == 1);
  CHECK(pats2[0].zero_allowed == IndexSet{0, 1});
  CHECK(pats2[0].nonzero_required == IndexSet{2});
  // zero fan: single all-torus pattern
  Calibration zc = cal3(f, v2(f, 1, 1), {2});
  QuantumFan zero_fan(zc, {{}}, {});
  auto pats3 = s_delta(zero_fan);
  REQUIRE(pats3.size() == 1);
  CHECK(pats3[0].zero_allowed.empty());
  CHECK(pats3[0].nonzero_required == IndexSet{0, 1, 2});
}

TEST_CASE("s_delta patterns are upward closed in the face order") {
  auto f = Q();
  auto fan = star_fan(f, v2(f, 2, 5));
  for (const auto& c : fan.cones())
    for (const auto& t : fan.cones()) {
      if (!std::includes(t.begin(), t.end(), c.begin(), c.end())) continue;
      auto pc = s_delta_pattern(fan, c);
      auto pt = s_delta_pattern(fan, t);
      CHECK(std::includes(pt.zero_allowed.begin(), pt.zero_allowed.end(),
                          pc.zero_allowed.begin(), pc.zero_allowed.end()));
    }
}

TEST_CASE("alpha blow-up of the plane is birational with the expected witness") {
  auto f = Qsqrt2();
  Vec alpha{f->one(), f->theta()};  // (1, sqrt2)
  BirationalFanMorphism b{star_fan(f, alpha), plane_fan(f, alpha),
                          ExactMatrix::identity(2, f), ExactMatrix::identity(3, f)};
  auto val = validate_birational(b);
  CHECK(val.report.ok());
  // witness: zero cone + rays e1, e2 on both sides
  CHECK(val.witness.source_cones ==
        std::vector<IndexSet>{IndexSet{}, IndexSet{0}, IndexSet{1}});
  CHECK(val.witness.exceptional_source == std::vector<int>{2});  // ray(alpha)
  CHECK(val.witness.exceptional_target.empty());
  // inverse has the swapped witness
  auto vinv = validate_birational(invert_birational(b));
  CHECK(vinv.report.ok());
  CHECK(vinv.witness.exceptional_source.empty());
  CHECK(vinv.witness.exceptional_target == std::vector<int>{2});
}

TEST_CASE("identity morphism has full witness") {
  auto f = Q();
  auto fan = star_fan(f, v2(f, 1, 1));
  BirationalFanMorphism b{fan, fan, ExactMatrix::identity(2, f), ExactMatrix::identity(3, f)};
  auto val = validate_birational(b);
  CHECK(val.report.ok());
  CHECK(val.witness.source_cones.size() == fan.cones().size());
  CHECK(val.witness.exceptional_source.empty());
  CHECK(val.witness.exceptional_target.empty());
}

TEST_CASE("composition of two plane blow-ups excludes both exceptional rays") {
  auto f = Q();
  // one calibration carrying both subdivision rays alpha=(1,1), beta=(2,1)
  std::vector<Vec> cols = {v2(f, 1, 0), v2(f, 0, 1), v2(f, 1, 1), v2(f, 2, 1)};
  ExactMatrix m = ExactMatrix::from_columns(cols);
  QuantumFan bl_a(Calibration{m, {3}}, {{0, 2}, {2, 1}}, {0, 1, 2});
  QuantumFan base(Calibration{m, {2, 3}}, {{0, 1}}, {0, 1});
  QuantumFan bl_b(Calibration{m, {2}}, {{0, 3}, {3, 1}}, {0, 1, 3});
  BirationalFanMorphism down{bl_a, base, ExactMatrix::identity(2, f),
                             ExactMatrix::identity(4, f)};
  BirationalFanMorphism up{base, bl_b, ExactMatrix::identity(2, f),
                           ExactMatrix::identity(4, f)};
  CHECK(validate_birational(down).report.ok());
  CHECK(validate_birational(up).report.ok());
  auto comp = compose_birational(up, down);
  auto val = validate_birational(comp);
  CHECK(val.report.ok());
  CHECK(val.witness.exceptional_source == std::vector<int>{2});
  CHECK(val.witness.exceptional_target == std::vector<int>{3});

  // b^-1 after b is the identity with full witness
  auto round = compose_birational(invert_birational(down), down);
  auto vr = validate_birational(round);
  CHECK(vr.report.ok());
  CHECK(vr.witness.source_cones.size() == bl_a.cones().size());
  // chain mismatch
  CHECK_THROWS_AS((void)compose_birational(down, down), Error);
}

TEST_CASE("a coordinate swap with permuted generator indices is a self-isomorphism") {
  auto f = Q();
  std::vector<Vec> cols = {v2(f, 1, 0), v2(f, 0, 1), v2(f, 1, 1)};
  QuantumFan fan(Calibration{ExactMatrix::from_columns(cols), {}}, {{0, 2}, {2, 1}},
                 {0, 1, 2});
  ExactMatrix L(2, 2, f);  // swap the plane's axes; (1,1) stays fixed
  L.at(0, 1) = f->one();
  L.at(1, 0) = f->one();
  ExactMatrix H(3, 3, f);  // swap the generator indices accordingly
  H.at(0, 1) = f->one();
  H.at(1, 0) = f->one();
  H.at(2, 2) = f->one();
  auto val = validate_birational(BirationalFanMorphism{fan, fan, L, H});
  CHECK(val.report.ok());
  CHECK(val.witness.source_cones.size() == fan.cones().size());
  CHECK(val.witness.exceptional_source.empty());
  CHECK(val.witness.exceptional_target.empty());
}

TEST_CASE("birational symmetry and rejection of singular H") {
  auto f = Q();
  std::vector<Vec> cols = {v2(f, 1, 0), v2(f, 0, 1), v2(f, 1, 1)};
  ExactMatrix m = ExactMatrix::from_columns(cols);
  QuantumFan fine(Calibration{m, {}}, {{0, 2}, {2, 1}}, {0, 1, 2});
  QuantumFan coarse(Calibration{m, {2}}, {{0, 1}}, {0, 1});
  BirationalFanMorphism b{fine, coarse, ExactMatrix::identity(2, f),
                          ExactMatrix::identity(3, f)};
  CHECK(validate_birational(b).report.ok() ==
        validate_birational(invert_birational(b)).report.ok());
  BirationalFanMorphism bad = b;
  bad.H.at(2, 2) = f->zero();
  CHECK(validate_birational(bad).report.has("NotInvertible"));
}
