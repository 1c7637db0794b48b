#pragma once

#include <optional>

#include "qfan/fan_maps.hpp"

namespace qfan {

/**
 * Data of a weighted blow-up: the base fan, the center cone (ordered
 * generator indices), the weight vector over the center's generators
 * (positive on the moving part, zero on the fixed part I), and the
 * calibration column equal to the weighted combination.
 */
struct BlowupSpec {
  QuantumFan base;
  IndexSet center;             // sigma, ordered generator indices
  std::vector<Scalar> weight;  // same length/order as center
  int new_gen_index;           // k with h(e_k) = sum weight_j * column(center_j)

  Vec point() const;  // the ambient combination alpha
  /// Positions (into center/weight) of the strictly positive weights.
  std::vector<int> moving_positions() const;
};

/**
 * Builds a BlowupSpec, locating the combination column or (when
 * extend_calibration is set) appending it just before the virtual tail.
 * Throws MissingCombinationColumn, NonPositiveWeight.
 */
BlowupSpec make_blowup_spec(const QuantumFan& base, const IndexSet& center,
                            const std::vector<Scalar>& weight, bool extend_calibration = false);

/**
 * Star subdivision of the fan at the column alpha_index inside sigma:
 * every cone containing alpha is replaced by the cones spanned by its
 * alpha-free faces together with alpha. Subdividing at an existing ray
 * returns the fan unchanged. Throws CenterNotInCone, IndexNotAvailable.
 */
QuantumFan star_subdivision(const QuantumFan& fan, int alpha_index, const IndexSet& sigma);

/**
 * The natural blow-up pair (id, H) for integer weights on the face fan of
 * the standard cone. Throws NonIntegerWeight otherwise - the toy-case
 * dichotomy as an error value.
 */
FanMorphism natural_blowup(const BlowupSpec& spec);

bool is_natural_blowup_valid(const BlowupSpec& spec);

/**
 * The weighted blow-up for arbitrary positive weights: the birational
 * pair (id, id) from the star subdivision to the base.
 */
BirationalFanMorphism irrational_blowup(const BlowupSpec& spec);

// --------------------------------------------------------------------------
// fibers of monomial maps

enum class TargetKind { Torus, Mixed, Zero };

/// Target orbit descriptor: which target coordinates are nonzero.
struct FiberTarget {
  TargetKind kind;
  IndexSet nonzero;  // I_t, used when kind == Mixed

  static FiberTarget torus() { return {TargetKind::Torus, {}}; }
  static FiberTarget zero() { return {TargetKind::Zero, {}}; }
  static FiberTarget mixed(IndexSet i_t) { return {TargetKind::Mixed, sorted_set(std::move(i_t))}; }
};

/**
 * One stratum of the reduced fiber: coordinates in zero_set vanish,
 * solved_set coordinates satisfy the monomial system L_A = target, and
 * free_set coordinates are unconstrained units.
 */
struct FiberStratum {
  IndexSet zero_set;    // A (inclusion-minimal)
  IndexSet solved_set;  // columns of A^c appearing in a nonzero-target row
  IndexSet free_set;    // columns of A^c absent from all such rows
  ExactMatrix solve_matrix;  // exponent rows of the nonzero target coords over A^c
  std::string descriptor;
};

/**
 * Reduced-fiber strata of a nonnegative-integer monomial map over the
 * given target orbit, canonicalized to inclusion-minimal zero sets.
 */
std::vector<FiberStratum> fiber_strata(const MonomialMap& map, const FiberTarget& target);

// --------------------------------------------------------------------------
// reducedness criteria

struct ReducednessReport {
  bool special_cases;      // the generic-point / origin special cases
  bool general_criterion;  // the general support-set formula
  bool agree;              // flags inputs where the two readings differ
  bool reduced() const { return special_cases; }
};

/**
 * Reducedness of the chart fiber stalk at a point whose nonzero
 * coordinate positions (within the moving part, chart excluded) are J.
 * Both published readings are evaluated; disagreement is flagged.
 * weights: positive integers over the moving part I^c; chart: position
 * into that list. Throws NonPositiveWeight.
 */
ReducednessReport fiber_reduced(const std::vector<Int>& weights, int chart, const IndexSet& J);

/// Global criterion: every fiber reduced iff all weights are 1.
bool blowup_fibers_reduced(const std::vector<Int>& weights);

// --------------------------------------------------------------------------
// exceptional divisor

/**
 * The exceptional divisor of a weighted blow-up of the standard affine
 * chart, presented in the coordinates of chart i (a position into the
 * moving part): a complete quantum fan of dimension |I^c| - 1 together
 * with the glued calibration.
 */
QuantumFan exceptional_divisor(const BlowupSpec& spec, int chart);

/// Transition matrix between divisor charts (square, size |I^c| - 1).
ExactMatrix divisor_chart_transition(const BlowupSpec& spec, int to_chart, int from_chart);

// --------------------------------------------------------------------------
// rational zig-zag and the d = 2 decomposition

struct RationalZigzag {
  FanMorphism up;    // (id, N id): middle -> weighted fan
  FanMorphism down;  // (id, N H): middle -> base
  Int scale;         // N
};

/// Decomposes the rational-weight blow-up through the N-scaled cover.
/// Throws NotRational for irrational weights.
RationalZigzag rational_zigzag(const BlowupSpec& spec);

// --------------------------------------------------------------------------

struct ZigzagStep {
  bool is_blowup;                // insertion (blow-up) or deletion (blow-down)
  int ray;                       // master calibration column index
  std::vector<Scalar> weights;   // for blow-ups: the two neighbor coefficients
  QuantumFan after;
};

struct ZigzagResult {
  Calibration master;  // shared calibration of every step
  QuantumFan start;    // f1 over the master calibration
  QuantumFan goal;     // f2 over the master calibration
  std::vector<ZigzagStep> steps;
  const QuantumFan& finish() const { return steps.empty() ? start : steps.back().after; }
};

/**
 * d = 2 decomposition: links two fans with equal support by single-ray
 * blow-ups followed by blow-downs, all over one shared calibration whose
 * virtual sets do the bookkeeping. Throws UnequalSupport,
 * UnsupportedDimension.
 */
ZigzagResult zigzag_dim2(const QuantumFan& f1, const QuantumFan& f2);

// --------------------------------------------------------------------------

struct RationalApproximation {
  QuantumFan fan;
  Int denominator;
};

/**
 * Rounds the non-virtual generator columns to denominator Q, walking the
 * ladder until the fan revalidates with unchanged combinatorial type.
 * Throws BudgetExhausted with the failing predicate.
 */
RationalApproximation rational_approximation(const QuantumFan& fan,
                                             std::vector<Int> ladder = {});

}  // namespace qfan
