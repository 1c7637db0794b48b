#include "qfan/rational.hpp"

#include <cctype>

#include "qfan/errors.hpp"

namespace qfan {

static Int int_from_string(const std::string& s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(ErrorCode::ParseError, "bad integer literal: " + s);
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(ErrorCode::ParseError, "bad integer literal: " + s);
  return Int(s);
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(int_from_string(s));
  Int num = int_from_string(s.substr(0, slash));
  Int den = int_from_string(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator: " + s);
  return Rat(num) / Rat(den);
}

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Int rat_floor(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;                      // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;  // correct for negative values
  return q;
}

Rat round_to_denominator(const Rat& r, const Int& q) {
  Int p = rat_floor(r * Rat(q) + Rat(1, 2));
  return Rat(p) / Rat(q);
}

Int denominator_of(const Rat& r) { return denominator(r); }

}  // namespace qfan
