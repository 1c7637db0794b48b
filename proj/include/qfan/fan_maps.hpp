#pragma once

#include "qfan/fan.hpp"

namespace qfan {

/**
 * Morphism of quantum fans: the pair (L, H) with L on the ambient spaces
 * and H on the generator lattices, subject to the commuting square
 * target.h * H = L * source.h, cone mapping, and virtual respect.
 */
struct FanMorphism {
  QuantumFan source;
  QuantumFan target;
  ExactMatrix L;  // d' x d
  ExactMatrix H;  // n' x n
};

/// Checks the three morphism conditions; violations carry witnesses.
ValidationReport validate_morphism(const FanMorphism& m);

/// Monomial map x -> (x^{A^T e'_1}, ...): the exponent matrix A, with
/// nonnegative integer entries. Composition is matrix product.
struct MonomialMap {
  ExactMatrix exponents;  // d' x d, nonnegative integers
  int target_dim() const { return exponents.rows(); }
  int source_dim() const { return exponents.cols(); }
};

MonomialMap monomial_compose(const MonomialMap& outer, const MonomialMap& inner);

/**
 * Exponent matrix of the chart-level map induced between two maximal
 * simplicial cones with L(sigma) inside sigma_prime: A = G'^-1 L G where
 * G, G' are the ordered generator matrices. Throws NotContained when the
 * image is not inside sigma_prime and NonIntegral (with the offending
 * entry) when A leaves the nonnegative integers - the way irrational
 * weights surface.
 */
MonomialMap local_monomial(const FanMorphism& m, const IndexSet& sigma,
                           const IndexSet& sigma_prime);

/// Gale transform: exact kernel complement k of h (n x (n-d), h*k = 0).
ExactMatrix gale_transform(const Calibration& cal);

/// Coordinate pattern C^{zero_allowed} x (C*)^{rest} of one maximal cone.
struct CoordinatePattern {
  IndexSet zero_allowed;      // sigma(1), sorted
  IndexSet nonzero_required;  // complement in {0..n-1}
};

/// The quasi-affine union describing the fan's quotient presentation:
/// one pattern per maximal cone.
std::vector<CoordinatePattern> s_delta(const QuantumFan& fan);

/// Pattern of a single cone (used for the face-order monotonicity checks).
CoordinatePattern s_delta_pattern(const QuantumFan& fan, const IndexSet& cone);

// ---------------------------------------------------------------------------

/**
 * Birational fan morphism: invertible (L, H) that restrict to a quantum
 * fan isomorphism between subfans after moving the dropped rays (and
 * possibly some unused generator indices) into the virtual sets.
 */
struct BirationalFanMorphism {
  QuantumFan source;
  QuantumFan target;
  ExactMatrix L;  // d x d invertible
  ExactMatrix H;  // n x n invertible, integer or rational entries
};

/// Maximal witness data for a birational fan morphism.
struct BirationalWitness {
  std::vector<IndexSet> source_cones;  // the maximal common subfan, sorted sets
  std::vector<IndexSet> target_cones;  // matching cones, same order
  std::vector<int> exceptional_source;  // source rays outside the witness
  std::vector<int> exceptional_target;
  std::vector<int> extra_virtual_source;  // J
  std::vector<int> extra_virtual_target;  // J'
};

struct BirationalValidation {
  ValidationReport report;
  BirationalWitness witness;
};

/// Computes the maximal witness and verifies the restricted isomorphism.
BirationalValidation validate_birational(const BirationalFanMorphism& b);

BirationalFanMorphism invert_birational(const BirationalFanMorphism& b);

/// Composition (b2 after b1); throws ChainMismatch if the middle fans differ.
BirationalFanMorphism compose_birational(const BirationalFanMorphism& b2,
                                         const BirationalFanMorphism& b1);

/// Structural equality of fans (same field, calibration, cones, generators).
bool same_fan(const QuantumFan& a, const QuantumFan& b);

}  // namespace qfan
