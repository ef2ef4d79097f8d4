#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nary {

/// Exact rational scalar. GMP keeps it reduced with a positive denominator.
using Rational = mpq_class;

/// Parses "p" or "p/q". In strict mode the text must already be the canonical
/// spelling (reduced, no "/1", no sign on the denominator, no whitespace).
Rational parse_rational(std::string_view text, bool strict = true);

std::string to_string(const Rational& q);

}  // namespace nary
