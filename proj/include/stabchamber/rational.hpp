#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stabchamber {

/// Exact rational scalar used for every lattice computation.
using Rational = mpq_class;

/// num / den in lowest terms. mpq_class(num, den) alone does not reduce.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "3", "-3/2" or a finite decimal such as "0.25". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q == 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace stabchamber
