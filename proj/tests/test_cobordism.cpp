#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfan/cobordism.hpp"
#include "qfan/errors.hpp"

using namespace qfan;

namespace {

FieldPtr Q() { return RealField::rationals(); }
FieldPtr Qsqrt2() {
  return RealField::create(Poly({Rat(-2), Rat(0), Rat(1)}), Rat(1), Rat(2));
}

Vec pt(const FieldPtr& f, std::initializer_list<Rat> cs) {
  Vec v;
  for (const auto& c : cs) v.push_back(f->from_rat(c));
  return v;
}

// the fan of P^2 with a virtual fourth column -e2 (the blow-up target)
QuantumFan p2_with_virtual(const FieldPtr& f) {
  Calibration cal{ExactMatrix::from_columns(
                      {pt(f, {1, 0}), pt(f, {0, 1}), pt(f, {-1, -1}), pt(f, {0, -1})}),
                  {3}};
  return QuantumFan(cal, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
}

// the worked projective-plane cobordism: total fan in R^3 with 8 maximal
// cones over the columns [e1, e2, e3, -e1-e2, -e2-e3, -e3]
FanCobordism p2_cobordism(const FieldPtr& f) {
  Calibration cal{
      ExactMatrix::from_columns({pt(f, {1, 0, 0}), pt(f, {0, 1, 0}), pt(f, {0, 0, 1}),
                                 pt(f, {-1, -1, 0}), pt(f, {0, -1, -1}), pt(f, {0, 0, -1})}),
      {}};
  std::vector<IndexSet> cones = {{0, 1, 2}, {3, 1, 2}, {0, 3, 2},          // e3 side
                                 {0, 3, 4},                                // leftover
                                 {0, 5, 4}, {0, 1, 5}, {3, 1, 5}, {3, 4, 5}};
  QuantumFan total(cal, cones, {0, 1, 2, 3, 4, 5});
  ExactMatrix L(2, 3, f);
  L.at(0, 0) = f->one();
  L.at(1, 1) = f->one();
  ExactMatrix H(4, 6, f);
  H.at(0, 0) = f->one();
  H.at(1, 1) = f->one();
  H.at(2, 3) = f->one();
  H.at(3, 4) = f->one();
  QuantumFan d0 = p2_with_virtual(f);
  Calibration cal1{d0.cal().columns, {}};
  QuantumFan d1(cal1, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {0, 1, 2, 3});
  return FanCobordism{total, {0, 1, 2}, {4, 5, 6, 7},
                      CobordismProjection{L, H, d0}, CobordismProjection{L, H, d1}};
}

// the 4-dimensional cube-flip polytope (see the polytope suite)
Polytope cube_flip_polytope(const FieldPtr& f) {
  std::vector<Polytope::Facet> ineqs;
  auto add = [&](std::initializer_list<Rat> normal, Rat offset) {
    ineqs.push_back(Polytope::Facet{pt(f, normal), f->from_rat(offset)});
  };
  add({1, 0, 0, 0}, Rat(0));
  add({-1, 0, 0, 0}, Rat(2));
  add({0, 1, 0, 0}, Rat(0));
  add({0, -1, 0, 0}, Rat(2));
  add({0, 0, 1, 0}, Rat(0));
  add({0, 0, 0, 1}, Rat(0));
  add({0, 0, 0, -1}, Rat(1));
  add({-1, -1, -1, -2}, Rat(5));
  return Polytope::from_constraints({}, ineqs, 4, f);
}

FanCobordism cube_flip_cobordism(const FieldPtr& f) {
  Polytope w = cube_flip_polytope(f);
  int bottom = find_facet(w, pt(f, {0, 0, 0, 1}), f->zero());
  int top = find_facet(w, pt(f, {0, 0, 0, -1}), f->one());
  return cobordism_from_polytope(w, bottom, top);
}

}  // namespace

TEST_CASE("the worked projective-plane cobordism validates with index (1,2)") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  auto report = validate_cobordism(c);
  for (const auto& v : report.violations) MESSAGE(v.code, ": ", v.message);
  CHECK(report.ok());
  auto [a, b] = cobordism_index(c);
  CHECK(a == 1);
  CHECK(b == 2);
}

TEST_CASE("cobordism violations are reported separately") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  SUBCASE("subfans sharing a maximal cone") {
    c.sub1.push_back(0);
    c.sub1.erase(std::find(c.sub1.begin(), c.sub1.end(), 4));
    auto report = validate_cobordism(c);
    CHECK(report.has("DisjointnessViolated"));
  }
  SUBCASE("H that is not a coordinate projection") {
    c.proj0.H.at(0, 1) = f->one();
    c.proj1.H = c.proj0.H;
    auto report = validate_cobordism(c);
    CHECK(!report.ok());
    CHECK((report.has("HNotCoordinateProjection") || report.has("DiagramNotCommuting")));
  }
  SUBCASE("two leftover cones") {
    c.sub1.erase(std::find(c.sub1.begin(), c.sub1.end(), 4));
    auto report = validate_cobordism(c);
    CHECK(report.has("LeftoverCountViolated"));
  }
}

TEST_CASE("catastrophe of the blow-up cobordism is the blown-up fan") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  QuantumFan cat = catastrophe_fan(c);
  CHECK(fans_geometrically_equal(cat, c.proj0.target));  // the P^2 fan itself
  // the merged cone is the subdivided quadrant Cone(e1, -e1-e2)
  ConeGeom merged = catastrophe_merged_cone(c);
  CHECK(merged.dim() == 2);
  CHECK(merged.is_simplicial());
  CHECK(merged.contains(pt(f, {0, -1})));
}

TEST_CASE("blowup_cobordism reproduces the worked example up to relabeling") {
  auto f = Q();
  QuantumFan base = p2_with_virtual(f);
  FanCobordism built = blowup_cobordism(base, {2, 0}, {f->one(), f->one()});
  auto report = validate_cobordism(built);
  for (const auto& v : report.violations) MESSAGE(v.code, ": ", v.message);
  CHECK(report.ok());
  auto [a, b] = cobordism_index(built);
  CHECK(a == 1);
  CHECK(b == 2);
  FanCobordism reference = p2_cobordism(f);
  CHECK(fans_geometrically_equal(built.total, reference.total));
  CHECK(fans_geometrically_equal(built.proj0.target, reference.proj0.target));
  CHECK(fans_geometrically_equal(built.proj1.target, reference.proj1.target));
  // Ex: the catastrophe fan is the fan we blow up
  CHECK(fans_geometrically_equal(catastrophe_fan(built), base));
}

TEST_CASE("blow-up cobordisms with irrational weights") {
  auto f = Qsqrt2();
  Calibration cal{ExactMatrix::from_columns({pt(f, {1, 0}), pt(f, {0, 1}), pt(f, {-1, -1})}),
                  {}};
  QuantumFan p2(cal, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
  std::vector<Scalar> alpha{f->one(), f->theta()};  // (1, sqrt2) on Cone(-e1-e2, e1)
  FanCobordism c = blowup_cobordism(p2, {2, 0}, alpha, /*extend=*/true);
  auto report = validate_cobordism(c);
  for (const auto& v : report.violations) MESSAGE(v.code, ": ", v.message);
  CHECK(report.ok());
  auto [a, b] = cobordism_index(c);
  CHECK(a == 1);
  CHECK(b == 2);
  // the projected 1-side is the weighted star subdivision
  CHECK(fans_geometrically_equal(catastrophe_fan(c), p2));
  // trivial base is rejected
  auto fq = Q();
  Calibration line{ExactMatrix::from_columns({Vec{fq->one()}, Vec{-fq->one()}}), {}};
  QuantumFan complete_line(line, {{0}, {1}}, {0, 1});
  CHECK_THROWS_AS(
      (void)blowup_cobordism(complete_line, {0}, {fq->one()}, true), Error);
}

TEST_CASE("blow-up cobordism of the projective 3-space fan has index (1,3)") {
  auto f = Q();
  Calibration cal{ExactMatrix::from_columns({pt(f, {1, 0, 0}), pt(f, {0, 1, 0}),
                                             pt(f, {0, 0, 1}), pt(f, {-1, -1, -1})}),
                  {}};
  QuantumFan p3(cal, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, {0, 1, 2, 3});
  REQUIRE(validate_fan(p3).ok());
  FanCobordism c = blowup_cobordism(p3, {0, 1, 2}, {f->one(), f->one(), f->one()},
                                    /*extend=*/true);
  CHECK(validate_cobordism(c).ok());
  auto [a, b] = cobordism_index(c);
  CHECK(a == 1);
  CHECK(b == 3);
}

TEST_CASE("cube-flip fan cobordism: index (2,2), merged square cone, diamond") {
  auto f = Q();
  FanCobordism c = cube_flip_cobordism(f);
  auto report = validate_cobordism(c);
  for (const auto& v : report.violations) MESSAGE(v.code, ": ", v.message);
  CHECK(report.ok());
  auto [a, b] = cobordism_index(c);
  CHECK(a == 2);
  CHECK(b == 2);

  // merged cone: four rays, four facets (the cone over a square)
  ConeGeom merged = catastrophe_merged_cone(c);
  CHECK(merged.extreme_rays().size() == 4);
  CHECK(merged.hrep().normals.size() == 4);
  CHECK(!merged.is_simplicial());
  auto faces = merged.face_ray_subsets();
  int by_size[5] = {0, 0, 0, 0, 0};
  for (const auto& s : faces) by_size[s.size()]++;
  CHECK(by_size[0] == 1);
  CHECK(by_size[1] == 4);
  CHECK(by_size[2] == 4);
  CHECK(by_size[4] == 1);

  // the catastrophe fan contains the non-simplicial merged cone
  QuantumFan cat = catastrophe_fan(c);
  CHECK(!cat.is_simplicial());
  CHECK(validate_fan(cat).ok());

  // transition: subdivide at the interior sum of the merged cone's rays
  Vec alpha(static_cast<std::size_t>(merged.ambient_dim()), f->zero());
  for (const auto& r : merged.extreme_rays()) alpha = vec_add(alpha, r);
  TransitionDiamond diamond = transition_fan(c, alpha);
  // a (2,2) flip subdivides the square cone into 2*2 maximal cones
  int in_merged = 0;
  for (std::size_t i = 0; i < diamond.transition.max_cones().size(); ++i)
    if (merged.contains_cone(diamond.transition.max_cone_geom(i))) ++in_merged;
  CHECK(in_merged == 4);
  CHECK(diamond.transition.is_simplicial());
  CHECK(validate_fan(diamond.transition).ok());
  // all four diamond edges are valid birational morphisms
  CHECK(diamond.to_end0.validation.report.ok());
  CHECK(diamond.to_end1.validation.report.ok());
  CHECK(diamond.end0_down.validation.report.ok());
  CHECK(diamond.end1_down.validation.report.ok());
  // commutativity at the witness level: both compositions to the
  // catastrophe have the same maximal witness
  auto left = validate_birational(
      compose_birational(diamond.end0_down.morphism, diamond.to_end0.morphism));
  auto right = validate_birational(
      compose_birational(diamond.end1_down.morphism, diamond.to_end1.morphism));
  CHECK(left.report.ok());
  CHECK(right.report.ok());
  CHECK(left.witness.source_cones == right.witness.source_cones);
}

TEST_CASE("transition fan of a blow-up cobordism is the blown-up end") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  // alpha = the blown-up direction -e2, interior to the merged cone
  TransitionDiamond diamond = transition_fan(c, pt(f, {0, -1}));
  CHECK(fans_geometrically_equal(diamond.transition, c.proj1.target));
  CHECK(diamond.to_end0.validation.report.ok());
  CHECK(diamond.to_end1.validation.report.ok());
  // a point outside the merged cone's relative interior is rejected
  CHECK_THROWS_AS((void)transition_fan(c, pt(f, {0, 1})), Error);
}

TEST_CASE("slice family: ends, catastrophe, and constant combinatorics") {
  auto f = Q();
  FanCobordism c = cube_flip_cobordism(f);
  QuantumFan at_minus1 = slice_family(c, -f->one());
  CHECK(same_fan(at_minus1, c.proj0.target));
  QuantumFan at_plus1 = slice_family(c, f->one());
  CHECK(same_fan(at_plus1, c.proj1.target));
  QuantumFan at_zero = slice_family(c, f->zero());
  CHECK(!at_zero.is_simplicial());
  QuantumFan at_half = slice_family(c, f->from_rat(Rat(1, 2)));
  QuantumFan at_3q = slice_family(c, f->from_rat(Rat(3, 4)));
  CHECK(at_half.cones() == at_3q.cones());
  // polytope-side cross-check on both sides of the catastrophe: slices of
  // the defining polytope have the matching normal fans
  Polytope w = cube_flip_polytope(f);
  Vec axis = pt(f, {0, 0, 0, 1});
  auto polytope_side_fan = [&](const Rat& height) {
    Polytope sl = slice(w, axis, f->from_rat(height));
    std::vector<Vec> cut;
    for (const auto& v : sl.vertices()) cut.push_back(Vec(v.begin(), v.end() - 1));
    return normal_fan(Polytope::from_vertices(cut, f));
  };
  CHECK(fans_geometrically_equal(polytope_side_fan(Rat(7, 8)), at_3q));
  QuantumFan at_minus_half = slice_family(c, -f->from_rat(Rat(1, 2)));
  CHECK(fans_geometrically_equal(polytope_side_fan(Rat(1, 4)), at_minus_half));
}

TEST_CASE("duality: the end projections are the end facets' normal fans") {
  auto f = Q();
  SUBCASE("triangle cobordism") {
    std::vector<Polytope::Facet> ineqs;
    auto add = [&](std::initializer_list<Rat> normal, Rat offset) {
      ineqs.push_back(Polytope::Facet{pt(f, normal), f->from_rat(offset)});
    };
    add({1, 0, 0}, Rat(0));
    add({0, 1, 0}, Rat(0));
    add({-1, -1, 0}, Rat(3));
    add({0, 0, 1}, Rat(0));
    add({0, 0, -1}, Rat(1));
    add({-1, 0, -1}, Rat(7, 2));
    Polytope w = Polytope::from_constraints({}, ineqs, 3, f);
    int bottom = find_facet(w, pt(f, {0, 0, 1}), f->zero());
    int top = find_facet(w, pt(f, {0, 0, -1}), f->one());
    FanCobordism c = cobordism_from_polytope(w, bottom, top);
    auto report = validate_cobordism(c);
    for (const auto& v : report.violations) MESSAGE(v.code, ": ", v.message);
    CHECK(report.ok());
    auto [a, b] = cobordism_index(c);
    CHECK(a == 1);
    CHECK(b == 2);
    for (int side : {0, 1}) {
      int facet = side == 0 ? bottom : top;
      std::vector<Vec> pts;
      for (std::size_t v = 0; v < w.vertices().size(); ++v)
        if (w.vertex_on_facet(static_cast<int>(v), facet))
          pts.push_back(Vec(w.vertices()[v].begin(), w.vertices()[v].end() - 1));
      QuantumFan expected = normal_fan(Polytope::from_vertices(pts, f));
      const QuantumFan& got = side == 0 ? c.proj0.target : c.proj1.target;
      CHECK(fans_geometrically_equal(expected, got));
    }
  }
  SUBCASE("cube flip cobordism") {
    Polytope w = cube_flip_polytope(f);
    int bottom = find_facet(w, pt(f, {0, 0, 0, 1}), f->zero());
    int top = find_facet(w, pt(f, {0, 0, 0, -1}), f->one());
    FanCobordism c = cobordism_from_polytope(w, bottom, top);
    for (int side : {0, 1}) {
      int facet = side == 0 ? bottom : top;
      std::vector<Vec> pts;
      for (std::size_t v = 0; v < w.vertices().size(); ++v)
        if (w.vertex_on_facet(static_cast<int>(v), facet))
          pts.push_back(Vec(w.vertices()[v].begin(), w.vertices()[v].end() - 1));
      QuantumFan expected = normal_fan(Polytope::from_vertices(pts, f));
      const QuantumFan& got = side == 0 ? c.proj0.target : c.proj1.target;
      CHECK(fans_geometrically_equal(expected, got));
    }
  }
}

TEST_CASE("deformation: identity, epsilon move, and irrational weights") {
  auto f = Qsqrt2();
  FanCobordism c = p2_cobordism(f);
  SUBCASE("zero deformation returns the cobordism unchanged") {
    FanCobordism out = deform_cobordism(c, c.proj0.target.cal(), 0);
    CHECK(same_fan(out.total, c.total));
    CHECK(frobenius_distance_sq(out.total.cal(), c.total.cal()).is_zero());
  }
  SUBCASE("moving the blown-up ray by epsilon keeps the index") {
    Calibration h1 = c.proj1.target.cal();
    h1.columns.at(0, 3) = f->from_rat(Rat(1, 10));  // (0,-1) -> (1/10,-1)
    FanCobordism out = deform_cobordism(c, h1, 1);
    CHECK(validate_cobordism(out).ok());
    auto [a, b] = cobordism_index(out);
    CHECK(a == 1);
    CHECK(b == 2);
    // only the lifted column moved, by exactly epsilon
    Scalar d2 = frobenius_distance_sq(out.total.cal(), c.total.cal());
    CHECK(d2 == f->from_rat(Rat(1, 100)));
  }
  SUBCASE("deforming the rational blow-up to weight (1, sqrt2)") {
    Calibration h1 = c.proj1.target.cal();
    // combination column becomes 1*(-e1-e2) + sqrt2*e1 = (sqrt2-1, -1)
    h1.columns.at(0, 3) = f->theta() - f->one();
    FanCobordism out = deform_cobordism(c, h1, 1);
    CHECK(validate_cobordism(out).ok());
    auto [a, b] = cobordism_index(out);
    CHECK(a == 1);
    CHECK(b == 2);
  }
  SUBCASE("virtual columns of the deformed end must not move") {
    Calibration h0 = c.proj0.target.cal();
    h0.columns.at(0, 3) = f->one();  // column 4 is virtual in the 0-end
    CHECK_THROWS_AS((void)deform_cobordism(c, h0, 0), Error);
  }
  SUBCASE("leaving the chamber is caught") {
    Calibration h1 = c.proj1.target.cal();
    h1.columns.set_col(3, pt(f, {0, 1}));  // flips into the upper half plane
    CHECK_THROWS_AS((void)deform_cobordism(c, h1, 1), Error);
  }
}

TEST_CASE("deformation distance decays linearly along the epsilon ladder") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  Scalar base_d2 = f->zero();
  for (int k = 1; k <= 6; ++k) {
    Rat eps(1, Int(1) << k);
    Calibration h1 = c.proj1.target.cal();
    h1.columns.at(0, 3) = f->from_rat(eps);
    FanCobordism out = deform_cobordism(c, h1, 1);
    Scalar d2 = frobenius_distance_sq(out.total.cal(), c.total.cal());
    CHECK(d2 == f->from_rat(eps * eps));  // exact quadratic of the linear decay
    if (k == 1) base_d2 = d2;
  }
  CHECK(base_d2 == f->from_rat(Rat(1, 4)));
}

TEST_CASE("deformation is idempotent on its own output") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  Calibration h1 = c.proj1.target.cal();
  h1.columns.at(0, 3) = f->from_rat(Rat(1, 10));
  FanCobordism once = deform_cobordism(c, h1, 1);
  FanCobordism twice = deform_cobordism(once, h1, 1);
  CHECK(same_fan(once.total, twice.total));
  CHECK(frobenius_distance_sq(once.total.cal(), twice.total.cal()).is_zero());
}

TEST_CASE("normalization conjugates a rotated cobordism back to drop-last") {
  auto f = Q();
  FanCobordism c = p2_cobordism(f);
  // rotate the ambient R^3: swap the last two coordinates
  ExactMatrix M(3, 3, f);
  M.at(0, 0) = f->one();
  M.at(1, 2) = f->one();
  M.at(2, 1) = f->one();
  Calibration rotated{M * c.total.cal().columns, c.total.cal().virtuals};
  QuantumFan total_rot(rotated, c.total.max_cones(), c.total.generators());
  FanCobordism crot{total_rot, c.sub0, c.sub1,
                    CobordismProjection{c.proj0.L * M.inverse(), c.proj0.H, c.proj0.target},
                    CobordismProjection{c.proj1.L * M.inverse(), c.proj1.H, c.proj1.target}};
  CHECK(validate_cobordism(crot).ok());
  FanCobordism normalized = normalize_cobordism(crot);
  ExactMatrix drop(2, 3, f);
  drop.at(0, 0) = f->one();
  drop.at(1, 1) = f->one();
  CHECK(normalized.proj0.L == drop);
  CHECK(validate_cobordism(normalized).ok());
  CHECK(fans_geometrically_equal(catastrophe_fan(normalized), c.proj0.target));
}
