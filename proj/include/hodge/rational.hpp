#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "hodge/error.hpp"

namespace hodge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n" or "p/q" (optional leading sign on p). Rejects q == 0,
/// whitespace and anything GMP would silently accept such as "0x10".
inline Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw ParseError("malformed rational \"" + std::string(text) + "\" (zero denominator)");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Lowest terms, sign on the numerator, no denominator when it is 1.
inline std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str(10);
}

inline Integer parse_integer(std::string_view text) {
  Rational q = parse_rational(text);
  if (q.get_den() != 1) throw ParseError("expected an integer, got \"" + std::string(text) + "\"");
  return q.get_num();
}

}  // namespace hodge
