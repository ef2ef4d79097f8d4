#include "nary/rational.hpp"

#include "nary/errors.hpp"

namespace nary {

Rational parse_rational(std::string_view text, bool strict) {
  std::string s(text);
  if (s.empty()) throw ParseError("", "empty rational");
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '-' || c == '/' || (!strict && (c == '+' || c == ' '));
    if (!ok) throw ParseError("", "bad character in rational '" + s + "'");
  }
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    if (den.empty() || den.find_first_not_of('0') == std::string::npos)
      throw ParseError("", "zero or missing denominator in '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("", "not a rational: '" + s + "'");
  // set_str keeps the fraction as written; canonical text must already be reduced.
  q.canonicalize();
  if (strict && q.get_str() != s) throw ParseError("", "rational '" + s + "' is not in lowest terms / canonical form");
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace nary
