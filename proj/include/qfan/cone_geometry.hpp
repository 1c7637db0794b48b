#pragma once

#include <vector>

#include "qfan/matrix.hpp"

namespace qfan {

/// H-representation of a polyhedral cone: {x : Ex = 0, Nx >= 0}.
struct HRep {
  std::vector<Vec> equalities;
  std::vector<Vec> normals;
};

/// V-representation: cone(rays) + span(lineality).
struct VRep {
  std::vector<Vec> rays;       // extreme rays, canonically normalized
  std::vector<Vec> lineality;  // basis of the lineality space
};

/**
 * Double description: extreme rays and lineality of {x : Ex = 0, Nx >= 0}.
 * The single geometric kernel of the library — facet enumeration, ray
 * enumeration, cone intersection and polytope V/H conversion all reduce
 * to this call. Exact throughout.
 */
VRep dual_description(const HRep& h, int dim, const FieldPtr& field);

/// Supporting description of cone(gens): span equalities + facet normals.
HRep facet_description(const std::vector<Vec>& gens, int dim, const FieldPtr& field);

/**
 * Polyhedral cone carrying both representations. Value type, immutable
 * after construction; all queries are pure.
 */
class ConeGeom {
 public:
  static ConeGeom from_generators(const std::vector<Vec>& gens, int dim, const FieldPtr& field);
  static ConeGeom from_hrep(const HRep& h, int dim, const FieldPtr& field);

  int ambient_dim() const { return dim_; }
  int dim() const { return cone_dim_; }
  bool is_pointed() const { return pointed_; }
  bool is_simplicial() const;
  const std::vector<Vec>& extreme_rays() const { return rays_; }
  const HRep& hrep() const { return hrep_; }
  const FieldPtr& field() const { return field_; }

  bool contains(const Vec& x) const;
  /// Strict version: x in the cone with every facet inequality strict and
  /// the span equalities tight (the relative interior).
  bool contains_relative_interior(const Vec& x) const;
  bool contains_cone(const ConeGeom& other) const;
  bool equals(const ConeGeom& other) const;

  ConeGeom intersect(const ConeGeom& other) const;

  /**
   * All faces, each as a sorted subset of extreme-ray indices (the whole
   * cone included, the apex {} included for pointed cones). Faces are
   * intersections of facets; enumerated by closure.
   */
  std::vector<std::vector<int>> face_ray_subsets() const;

  /// Lexicographically sorted canonical rays (for set comparison / hashing).
  const std::vector<Vec>& canonical_rays() const { return rays_; }

 private:
  ConeGeom() = default;
  int dim_ = 0;
  int cone_dim_ = 0;
  bool pointed_ = true;
  FieldPtr field_;
  std::vector<Vec> rays_;       // canonical, lex-sorted
  std::vector<Vec> lineality_;  // nonempty only for non-pointed cones
  HRep hrep_;
  void finish(const FieldPtr& field, int dim, VRep v);
};

/// Exact lexicographic comparison of equal-length scalar vectors.
int vec_lex_compare(const Vec& a, const Vec& b);

}  // namespace qfan
