#include "qfan/field.hpp"

#include <sstream>

#include "qfan/errors.hpp"

namespace qfan {

RealField::RealField(Poly minpoly, Rat lo, Rat hi)
    : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  sturm_ = sturm_chain(minpoly_);
  cache_lo_ = lo_;
  cache_hi_ = hi_;
}

FieldPtr RealField::create(const Poly& minpoly, const Rat& lo, const Rat& hi) {
  if (minpoly.degree() < 1 || !minpoly.is_monic())
    fail(ErrorCode::ParseError, "minimal polynomial must be monic of degree >= 1");
  if (minpoly.degree() > 8)
    fail(ErrorCode::DegreeCapExceeded, "field degree capped at 8, got " +
                                           std::to_string(minpoly.degree()));
  if (lo >= hi) fail(ErrorCode::ParseError, "isolating interval is empty");
  if (!is_irreducible_over_Q(minpoly))
    fail(ErrorCode::Reducible, "minimal polynomial is reducible over Q: " + minpoly.to_string());
  if (minpoly.degree() == 1) {
    // theta is the rational root; interval must contain it.
    Rat root = -minpoly.coeff(0);
    if (!(lo < root && root < hi))
      fail(ErrorCode::NoRootInInterval, "interval does not contain the rational root");
    return FieldPtr(new RealField(minpoly, lo, hi));
  }
  if (minpoly.eval(lo) == 0 || minpoly.eval(hi) == 0)
    fail(ErrorCode::ParseError, "interval endpoint is a root (impossible for an irreducible "
                                "polynomial of degree >= 2; endpoints must be non-roots)");
  auto chain = sturm_chain(minpoly);
  int count = sturm_count(chain, lo, hi);
  if (count == 0) fail(ErrorCode::NoRootInInterval, "no real root in the interval");
  if (count > 1)
    fail(ErrorCode::MultipleRootsInInterval,
         std::to_string(count) + " real roots in the interval");
  return FieldPtr(new RealField(minpoly, lo, hi));
}

FieldPtr RealField::rationals() {
  static FieldPtr q = FieldPtr(new RealField(Poly::x(), Rat(-1), Rat(1)));
  return q;
}

std::pair<Rat, Rat> RealField::refine_once() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (degree() == 1) {
    Rat root = -minpoly_.coeff(0);
    cache_lo_ = cache_hi_ = root;
    return {cache_lo_, cache_hi_};
  }
  Rat mid = (cache_lo_ + cache_hi_) / 2;
  // mid cannot be a root (irreducible, degree >= 2, so no rational roots)
  if (sturm_count(sturm_, cache_lo_, mid) == 1)
    cache_hi_ = mid;
  else
    cache_lo_ = mid;
  return {cache_lo_, cache_hi_};
}

std::pair<Rat, Rat> RealField::refined_interval(const Rat& eps) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_hi_ - cache_lo_ <= eps) return {cache_lo_, cache_hi_};
  }
  while (true) {
    auto [lo, hi] = refine_once();
    if (hi - lo <= eps) return {lo, hi};
  }
}

Scalar RealField::scalar(std::vector<Rat> coeffs) const {
  coeffs.resize(static_cast<std::size_t>(degree()), Rat(0));
  return Scalar(shared_from_this(), std::move(coeffs));
}

Scalar RealField::from_rat(const Rat& r) const {
  std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
  c[0] = r;
  return Scalar(shared_from_this(), std::move(c));
}

Scalar RealField::from_int(long v) const { return from_rat(Rat(v)); }
Scalar RealField::zero() const { return from_rat(Rat(0)); }
Scalar RealField::one() const { return from_rat(Rat(1)); }

Scalar RealField::theta() const {
  if (degree() == 1) return from_rat(-minpoly_.coeff(0));
  std::vector<Rat> c(static_cast<std::size_t>(degree()), Rat(0));
  c[1] = Rat(1);
  return Scalar(shared_from_this(), std::move(c));
}

bool RealField::same_as(const RealField& other) const {
  if (this == &other) return true;
  return minpoly_ == other.minpoly_ && lo_ == other.lo_ && hi_ == other.hi_;
}

// ---------------------------------------------------------------------------

Scalar::Scalar(FieldPtr f, std::vector<Rat> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  if (!f_) fail(ErrorCode::ParseError, "scalar without a field");
  if (static_cast<int>(c_.size()) != f_->degree())
    fail(ErrorCode::DimensionMismatch, "scalar coefficient count != field degree");
}

void Scalar::check_same_field(const Scalar& a, const Scalar& b) {
  if (!a.f_ || !b.f_) fail(ErrorCode::ParseError, "uninitialized scalar");
  if (a.f_ == b.f_) return;
  if (!a.f_->same_as(*b.f_))
    fail(ErrorCode::FieldMismatch, "scalars from different fields cannot be mixed");
}

FieldPtr common_field(const Scalar& a, const Scalar& b) {
  if (a.field() == b.field()) return a.field();
  if (!a.field()->same_as(*b.field()))
    fail(ErrorCode::FieldMismatch, "scalars from different fields cannot be mixed");
  return a.field();
}

bool Scalar::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Scalar::rational_value() const {
  if (f_->degree() == 1) {
    // value = c0 + c1*theta with m=1: coeffs has a single entry; theta rational
    // only enters through theta() which already folds it in.
    return c_[0];
  }
  if (!is_rational()) fail(ErrorCode::NonIntegral, "scalar is not rational");
  return c_[0];
}

bool Scalar::is_integer() const {
  return is_rational() && denominator(rational_value()) == 1;
}

Int Scalar::integer_value() const {
  if (!is_integer()) fail(ErrorCode::NonIntegral, "scalar is not an integer");
  return numerator(rational_value());
}

int Scalar::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return rational_value().sign();
  Poly p{std::vector<Rat>(c_)};
  auto [lo, hi] = f_->refined_interval(Rat(1, 16));
  while (true) {
    auto [vlo, vhi] = p.eval_interval(lo, hi);
    if (vlo > 0) return 1;
    if (vhi < 0) return -1;
    std::tie(lo, hi) = f_->refine_once();
  }
}

Scalar Scalar::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& v : r) v = -v;
  return Scalar(f_, std::move(r));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  std::vector<Rat> r = a.c_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.c_[i];
  return Scalar(a.f_, std::move(r));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  Poly prod = Poly(std::vector<Rat>(a.c_)) * Poly(std::vector<Rat>(b.c_));
  Poly rem = prod.divmod(a.f_->minpoly()).second;
  std::vector<Rat> r(static_cast<std::size_t>(a.f_->degree()), Rat(0));
  for (int i = 0; i <= rem.degree(); ++i) r[static_cast<std::size_t>(i)] = rem.coeff(i);
  return Scalar(a.f_, std::move(r));
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::NotInvertible, "division by zero scalar");
  if (is_rational()) return f_->from_rat(Rat(1) / rational_value());
  // extended Euclid: u*s + v*minpoly = 1  =>  s^{-1} = u mod minpoly
  Poly r0 = f_->minpoly();
  Poly r1{std::vector<Rat>(c_)};
  Poly u0, u1 = Poly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly u2 = u0 - q * u1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  // r0 = gcd (a nonzero constant since minpoly is irreducible)
  Rat g = r0.coeff(0);
  std::vector<Rat> res(static_cast<std::size_t>(f_->degree()), Rat(0));
  for (int i = 0; i <= u0.degree(); ++i) res[static_cast<std::size_t>(i)] = u0.coeff(i) / g;
  return Scalar(f_, std::move(res));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  return a.c_ == b.c_;
}

std::pair<Rat, Rat> Scalar::enclosure(const Rat& eps) const {
  if (is_rational()) return {rational_value(), rational_value()};
  Poly p{std::vector<Rat>(c_)};
  auto [lo, hi] = f_->refined_interval(Rat(1, 16));
  while (true) {
    auto [vlo, vhi] = p.eval_interval(lo, hi);
    if (vhi - vlo <= eps) return {vlo, vhi};
    std::tie(lo, hi) = f_->refine_once();
  }
}

double Scalar::to_double() const {
  auto [lo, hi] = enclosure(Rat(1, Int(1) << 40));
  Rat mid = (lo + hi) / 2;
  return numerator(mid).convert_to<double>() / denominator(mid).convert_to<double>();
}

Rat Scalar::round(const Int& q) const {
  if (is_rational()) return round_to_denominator(rational_value(), q);
  auto [lo, hi] = enclosure(Rat(1, 4 * q));
  Rat cand = round_to_denominator((lo + hi) / 2, q);
  return cand;
}

std::string Scalar::to_string() const {
  if (is_rational()) return rat_to_string(c_.empty() ? Rat(0) : c_[0]);
  return Poly(std::vector<Rat>(c_)).to_string("th");
}

}  // namespace qfan
