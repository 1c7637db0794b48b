#pragma once

#include <vector>

#include "qfan/rational.hpp"

namespace qfan {

/**
 * Dense univariate polynomial over the rationals, coefficients in
 * ascending degree order with no trailing zeros.
 */
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly x();  // the monomial x

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
  bool is_zero() const { return c_.empty(); }
  const Rat& leading() const;
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const;
  bool is_monic() const;

  Rat eval(const Rat& x) const;
  // Interval Horner evaluation: encloses {p(x) : x in [lo,hi]}.
  std::pair<Rat, Rat> eval_interval(const Rat& lo, const Rat& hi) const;

  Poly derivative() const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  // Euclidean division: *this = q*d + r with deg r < deg d.
  std::pair<Poly, Poly> divmod(const Poly& d) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  std::vector<Rat> c_;
  void trim();
};

Poly poly_gcd(Poly a, Poly b);  // monic gcd

/// Sturm chain of p (p squarefree not required; uses p, p', -rem, ...).
std::vector<Poly> sturm_chain(const Poly& p);

/// Number of distinct real roots of p in (a, b]; requires p(a) != 0.
int sturm_count(const std::vector<Poly>& chain, const Rat& a, const Rat& b);

/// Exact irreducibility over Q, degree <= 8 (Zassenhaus).
bool is_irreducible_over_Q(const Poly& p);

}  // namespace qfan
