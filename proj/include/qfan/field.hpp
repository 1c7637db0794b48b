#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "qfan/polynomial.hpp"
#include "qfan/rational.hpp"

namespace qfan {

class Scalar;
class RealField;
using FieldPtr = std::shared_ptr<const RealField>;

/**
 * A real algebraic number field Q(theta): a monic irreducible minimal
 * polynomial together with a rational interval isolating exactly one real
 * root theta. Every Scalar in a computation lives in one shared field.
 *
 * Degree is soft-capped at 8; all constructions here need at most 2.
 */
class RealField : public std::enable_shared_from_this<RealField> {
 public:
  /// Validates and builds a field. Throws Reducible, NoRootInInterval,
  /// MultipleRootsInInterval, DegreeCapExceeded.
  static FieldPtr create(const Poly& minpoly, const Rat& lo, const Rat& hi);

  /// The pure rational field Q (minpoly x, interval (-1,1)).
  static FieldPtr rationals();

  int degree() const { return minpoly_.degree(); }
  bool is_rational() const { return degree() == 1; }
  const Poly& minpoly() const { return minpoly_; }
  std::pair<Rat, Rat> interval() const { return {lo_, hi_}; }

  /// Isolating interval refined (and cached) until hi-lo <= eps.
  std::pair<Rat, Rat> refined_interval(const Rat& eps) const;
  /// One bisection step on the cached interval; returns the new interval.
  std::pair<Rat, Rat> refine_once() const;

  Scalar scalar(std::vector<Rat> coeffs) const;
  Scalar from_rat(const Rat& r) const;
  Scalar from_int(long v) const;
  Scalar zero() const;
  Scalar one() const;
  /// The generator theta itself (for degree 1 this is the rational root).
  Scalar theta() const;

  bool same_as(const RealField& other) const;

 private:
  RealField(Poly minpoly, Rat lo, Rat hi);
  Poly minpoly_;
  Rat lo_, hi_;
  std::vector<Poly> sturm_;
  mutable std::mutex mu_;
  mutable Rat cache_lo_, cache_hi_;

  friend class Scalar;
};

/**
 * Element of the active field, represented by its coefficient vector
 * c0 + c1*theta + ... + c_{m-1}*theta^{m-1}. Immutable value type; all
 * arithmetic is exact and closed (products reduce mod the minimal
 * polynomial).
 */
class Scalar {
 public:
  Scalar() = default;  // invalid until assigned
  Scalar(FieldPtr f, std::vector<Rat> coeffs);

  const FieldPtr& field() const { return f_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  /// True when the value lies in Q (all theta-coefficients vanish).
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  bool is_integer() const;
  Int integer_value() const;

  /// Exact sign via Sturm-certified interval refinement.
  int sign() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return (a - b).sign() > 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return (a - b).sign() <= 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return (a - b).sign() >= 0; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  /// Rational enclosure of width <= eps.
  std::pair<Rat, Rat> enclosure(const Rat& eps) const;
  /// Double approximation (rendering only; never used in exact paths).
  double to_double() const;
  /// Nearest rational with denominator q.
  Rat round(const Int& q) const;

  std::string to_string() const;

 private:
  FieldPtr f_;
  std::vector<Rat> c_;
  static void check_same_field(const Scalar& a, const Scalar& b);
};

/// Shared field of a and b (error FieldMismatch if they differ).
FieldPtr common_field(const Scalar& a, const Scalar& b);

}  // namespace qfan
