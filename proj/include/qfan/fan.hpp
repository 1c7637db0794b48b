#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qfan/cone_geometry.hpp"
#include "qfan/validation.hpp"

namespace qfan {

using IndexSet = std::vector<int>;  // 0-based indices into calibration columns

IndexSet sorted_set(IndexSet s);

/**
 * Calibration of a finitely generated subgroup of R^d: the group morphism
 * h given column-wise (column j = h(e_j)), plus the set of virtual
 * generator indices. Standardness (identity prefix, virtual tail) is a
 * reported flag, not a construction requirement.
 */
struct Calibration {
  ExactMatrix columns;        // d x n
  std::vector<int> virtuals;  // sorted

  int d() const { return columns.rows(); }
  int n() const { return columns.cols(); }
  const FieldPtr& field() const { return columns.field(); }
  Vec column(int j) const { return columns.col(j); }
  bool is_virtual(int j) const;

  bool standard_prefix() const;  // h(e_i) = e_i for i = 0..d-1
  bool virtual_tail() const;     // virtuals = {n-|virtuals|, ..., n-1}
  bool is_standard() const { return standard_prefix() && virtual_tail(); }

  int nonvirtual_rank() const;

  ValidationReport validate() const;
};

/// Geometry of the cone spanned by the given calibration columns.
ConeGeom cone_geom(const Calibration& cal, const IndexSet& gens);

/**
 * Quantum fan: a calibration, the maximal cones as (ordered) generator
 * index sets, and the generator set A. Faces and intersections are
 * recomputed from the maximal cones. Construction computes geometry but
 * never rejects fan-axiom violations - validate_fan reports them.
 */
class QuantumFan {
 public:
  QuantumFan(Calibration cal, std::vector<IndexSet> max_cones, std::vector<int> generator_set);

  const Calibration& cal() const { return cal_; }
  int dim() const { return cal_.d(); }
  const std::vector<IndexSet>& max_cones() const { return max_cones_; }
  const std::vector<int>& generators() const { return generators_; }  // the set A, sorted
  const ConeGeom& max_cone_geom(std::size_t i) const { return *max_geoms_[i]; }

  /// Every cone of the fan (all faces of maximal cones), as sorted index
  /// sets ordered by (size, lex). Includes the apex {} when present.
  const std::vector<IndexSet>& cones() const { return all_cones_; }
  const ConeGeom& geom_of(const IndexSet& sorted_gens) const;
  bool has_cone(const IndexSet& sorted_gens) const;

  /// Generator indices spanning the 1-cones, sorted (equals A on valid fans).
  std::vector<int> ray_indices() const;

  bool is_simplicial() const;
  bool is_complete() const;

  /// Listed cone with the same geometry, if any.
  std::optional<IndexSet> find_cone_matching(const ConeGeom& g) const;

 private:
  Calibration cal_;
  std::vector<IndexSet> max_cones_;
  std::vector<int> generators_;
  std::vector<std::shared_ptr<const ConeGeom>> max_geoms_;
  std::vector<IndexSet> all_cones_;
  std::map<IndexSet, std::shared_ptr<const ConeGeom>> geom_by_cone_;
};

/// Def-by-def check of the fan axioms; empty report iff valid.
ValidationReport validate_fan(const QuantumFan& fan);

/**
 * Exact support equality. d = 2 uses an angular sweep; higher dimensions
 * are decided through completeness (both complete => equal support R^d).
 * Throws UnsupportedDimension when neither procedure applies.
 */
bool support_equal(const QuantumFan& a, const QuantumFan& b);

/// Angular order on nonzero vectors of R^2 (counterclockwise from +x).
int angular_compare(const Vec& a, const Vec& b);

/// All faces of the cone spanned by gens, as generator index subsets
/// ordered by inclusion (size then lex). The subset lattice for simplicial
/// cones; facet-equality sets in general.
std::vector<IndexSet> face_lattice(const Calibration& cal, const IndexSet& gens);

}  // namespace qfan
