#pragma once

#include <optional>
#include <vector>

#include "qfan/field.hpp"

namespace qfan {

using Vec = std::vector<Scalar>;

// small vector helpers (all exact; dimensions must match)
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Scalar& s, const Vec& v);
Scalar vec_dot(const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& v);
/// True when a = lambda*b for some lambda > 0 (both nonzero).
bool vec_positive_multiple(const Vec& a, const Vec& b);
/// Canonical representative of the ray through v: first nonzero entry has
/// absolute value 1.
Vec ray_normalize(const Vec& v);

/**
 * Dense matrix over the active field with exact elimination-based rank,
 * kernel, inverse and solving. No floating point anywhere.
 */
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(int rows, int cols, FieldPtr field);
  static ExactMatrix identity(int n, FieldPtr field);
  static ExactMatrix from_rows(const std::vector<Vec>& rows);
  static ExactMatrix from_columns(const std::vector<Vec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }

  Scalar& at(int i, int j);
  const Scalar& at(int i, int j) const;
  Vec row(int i) const;
  Vec col(int j) const;
  void set_row(int i, const Vec& v);
  void set_col(int j, const Vec& v);

  ExactMatrix transpose() const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  Vec apply(const Vec& x) const;  // matrix * column vector

  int rank() const;
  std::vector<Vec> kernel_basis() const;
  ExactMatrix inverse() const;  // throws NotInvertible
  Scalar det() const;           // square only

  /// One particular solution of A x = b, or nullopt when infeasible.
  std::optional<Vec> solve(const Vec& b) const;

  bool all_integer() const;
  bool all_rational() const;

 private:
  int rows_, cols_;
  FieldPtr f_;
  std::vector<Scalar> e_;
};

/**
 * Point of {x : constraint*x = rhs} closest to anchor in the standard
 * Euclidean inner product (exact normal-equation solve over the field).
 * Throws Infeasible.
 */
Vec solve_affine_projection(const ExactMatrix& constraint, const Vec& rhs, const Vec& anchor);

}  // namespace qfan
