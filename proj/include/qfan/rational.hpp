#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

namespace qfan {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Parse a decimal-free rational string: "p", "-p", "p/q". Throws ParseError.
Rat rat_from_string(const std::string& s);

/// Canonical string form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& r);

inline int rat_sign(const Rat& r) { return r.sign(); }

Int rat_floor(const Rat& r);

/// Nearest rational with denominator q (ties round up).
Rat round_to_denominator(const Rat& r, const Int& q);

/// Smallest positive integer N with N*r integral.
Int denominator_of(const Rat& r);

}  // namespace qfan
