#pragma once

#include "qfan/blowup.hpp"
#include "qfan/polytope.hpp"

namespace qfan {

/// One side of a cobordism: the pair (L, H) and the fan it projects onto.
struct CobordismProjection {
  ExactMatrix L;  // d x (d+1), onto
  ExactMatrix H;  // n_i x n, integer, onto
  QuantumFan target;
};

/**
 * Fan cobordism: a complete simplicial fan in R^{d+1} with two disjoint
 * sets of maximal cones projecting onto the two end fans and exactly one
 * maximal cone left over.
 */
struct FanCobordism {
  QuantumFan total;
  std::vector<int> sub0;  // indices into total.max_cones()
  std::vector<int> sub1;
  CobordismProjection proj0;
  CobordismProjection proj1;

  bool shared_projection() const { return proj0.L == proj1.L && proj0.H == proj1.H; }
};

/// Checks the pre-cobordism bullets, the three strengthening conditions,
/// and the ray-count laws; reports each failure separately.
ValidationReport validate_cobordism(const FanCobordism& c);

/// Index (a, b): neighbor counts of the leftover cone on either side.
/// Throws NotValid when the leftover cone is not unique.
std::pair<int, int> cobordism_index(const FanCobordism& c);

/**
 * The common coarsening: the projected cones adjacent to the leftover
 * cone merge into one (generally non-simplicial) cone; both sides must
 * agree (UnionsDiffer otherwise). Virtual set: intersection of the ends'.
 */
QuantumFan catastrophe_fan(const FanCobordism& c);

/// The merged cone of the catastrophe construction, in the base R^d.
ConeGeom catastrophe_merged_cone(const FanCobordism& c);

/**
 * Construction of the alpha-blow-up cobordism of a complete simplicial
 * fan along a maximal cone. Throws NotComplete, MissingCombinationColumn
 * (unless extend_calibration).
 */
FanCobordism blowup_cobordism(const QuantumFan& base, const IndexSet& sigma,
                              const std::vector<Scalar>& alpha, bool extend_calibration = false);

/// Edge of the birational diamond together with its validation.
struct DiamondEdge {
  BirationalFanMorphism morphism;
  BirationalValidation validation;
};

struct TransitionDiamond {
  QuantumFan transition;   // star subdivision of the merged cone
  QuantumFan catastrophe;  // shared coarsening (over the extended calibration)
  QuantumFan end0, end1;   // the two ends over the extended calibration
  DiamondEdge to_end0, to_end1;      // transition -> ends (blow-downs)
  DiamondEdge end0_down, end1_down;  // ends -> catastrophe
};

/// Star-subdivides the merged cone at an interior point and assembles the
/// five-node diagram of birational morphisms. Throws NotInterior.
TransitionDiamond transition_fan(const FanCobordism& c, const Vec& alpha);

/**
 * The slice family: end fans off 0, the catastrophe fan at 0, calibration
 * columns interpolated affinely between the two ends. Revalidated at the
 * queried parameter (NotValid).
 */
QuantumFan slice_family(const FanCobordism& c, const Scalar& t);

/**
 * Deformation: replaces the calibration of one end (0 or 1) and lifts
 * columnwise through the fiber-nearest-point rule; combinatorics must
 * survive (ChamberLeft) and the deformed end's virtual columns must not
 * move (VirtualMismatch).
 */
FanCobordism deform_cobordism(const FanCobordism& c, const Calibration& h_new, int end = 0);

/// Squared Frobenius distance between two equal-shape calibrations.
Scalar frobenius_distance_sq(const Calibration& a, const Calibration& b);

/**
 * Duality: the fan cobordism of a polytope cobordism with horizontal end
 * facets, via normal fans (the ends project by dropping the last
 * coordinate). Throws NotElementary, NotValid.
 */
FanCobordism cobordism_from_polytope(const Polytope& w, int p_facet, int q_facet);

/// Conjugates a shared-projection cobordism so that L becomes the
/// drop-last-coordinate projection.
FanCobordism normalize_cobordism(const FanCobordism& c);

/// Geometric equality of fans: equal maximal cone sets as point sets
/// (labels and calibrations may differ).
bool fans_geometrically_equal(const QuantumFan& a, const QuantumFan& b);

}  // namespace qfan
