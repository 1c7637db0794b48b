#pragma once

#include <optional>

#include "qfan/fan.hpp"

namespace qfan {

/**
 * Exact polytope: vertex representation with the facet representation
 * (inner normals) cached via the homogenization cone. Immutable.
 */
class Polytope {
 public:
  struct Facet {
    Vec normal;     // inner normal a
    Scalar offset;  // b, with a.x + b >= 0 on the polytope
  };
  struct HullEquality {
    Vec normal;
    Scalar offset;  // a.x + b = 0 on the affine hull
  };

  /// Builds from points; non-extremal points are dropped.
  static Polytope from_vertices(const std::vector<Vec>& points, const FieldPtr& field);

  /// Vertex enumeration of {x : eq, a.x + b >= 0}; the polytope must be
  /// bounded and nonempty (EmptySlice when empty, NotValid when unbounded).
  static Polytope from_constraints(const std::vector<HullEquality>& equalities,
                                   const std::vector<Facet>& inequalities, int dim,
                                   const FieldPtr& field);

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<HullEquality>& hull_equalities() const { return hull_; }

  bool vertex_on_facet(int v, int f) const;
  /// Facet indices through each vertex.
  const std::vector<IndexSet>& vertex_facets() const { return vertex_facets_; }
  /// Simplicity: every vertex lies on exactly dim facets.
  bool is_simple() const;
  /// Edges as vertex index pairs (i < j).
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::vector<int> neighbors(int v) const;

 private:
  Polytope() = default;
  int ambient_ = 0, dim_ = 0;
  FieldPtr field_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<HullEquality> hull_;
  std::vector<IndexSet> vertex_facets_;
  std::vector<std::pair<int, int>> edges_;
  void finish();
};

/// Facet index whose (normal, offset) is a positive multiple of the given
/// pair; -1 if absent.
int find_facet(const Polytope& p, const Vec& inner_normal, const Scalar& offset);

/**
 * Normal fan of a full-dimensional polytope: one maximal cone per vertex,
 * spanned by the inner normals of its facets. Throws DegeneratePolytope
 * when the polytope is not full-dimensional.
 */
QuantumFan normal_fan(const Polytope& p);

// ---------------------------------------------------------------------------

enum class CobordismKind { Trivial, Elementary, Composite };

struct PolytopeCobordism {
  Polytope total;  // W, dimension q+1
  int p_facet, q_facet;
  std::vector<int> interior_vertices;  // vertices on neither end facet
  CobordismKind kind;
};

/// Validates facet indices, disjointness, and counts interior vertices.
/// Throws NotAFacet, FacetsIntersect.
PolytopeCobordism classify_cobordism(const Polytope& w, int p_facet, int q_facet);

/// Flip index (a, b) of an elementary cobordism: edge counts from the
/// interior vertex down to P and up to Q. Throws NotElementary.
std::pair<int, int> flip_index(const PolytopeCobordism& cob);

/**
 * Exact slice {x in W : x.axis = t}: vertices of W on the hyperplane plus
 * edge crossings. The hyperplane must meet the interior (EmptySlice).
 */
Polytope slice(const Polytope& w, const Vec& axis, const Scalar& t);

// ---------------------------------------------------------------------------

struct AdmissibilityReport {
  bool siegel;
  bool weak_hyperbolic;
  std::optional<IndexSet> violating_subset;  // smallest I with 0 in Conv(A_I)
  bool admissible() const { return siegel && weak_hyperbolic; }
};

/// Siegel condition and weak hyperbolicity of a p x n matrix, decided by
/// exact feasibility (no floating point, no LP).
AdmissibilityReport lvm_admissible(const ExactMatrix& a);

/**
 * The quotient polytope P_A = {r >= 0 : A r = 0, sum r = 1} of an
 * admissible matrix, realized exactly in moment coordinates. Simple of
 * dimension n - p - 1. Throws NotAdmissible.
 */
Polytope lvm_polytope(const ExactMatrix& a);

// ---------------------------------------------------------------------------

struct SurgeryDescriptor {
  int a, b, p;
  std::string removed;  // product piece taken out
  std::string glued;    // product piece glued back
};

/// Combinatorial surgery datum of an elementary cobordism (bookkeeping
/// only; no manifold is built).
SurgeryDescriptor surgery_descriptor(const PolytopeCobordism& cob, int p);

}  // namespace qfan
