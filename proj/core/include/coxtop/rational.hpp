#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coxtop {

using Integer = mpz_class;
using Rational = mpq_class;

/// Serialized form "p/q" (q is always written, also for integers).
std::string to_string(const Rational& r);

/// Accepts "p/q" or "p"; throws InputError otherwise or when q == 0.
Rational parse_rational(std::string_view text);

/// p/q in lowest terms (the raw mpq_class(p, q) constructor does not reduce).
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Short human form: "p" for integers, "p/q" otherwise.
std::string to_display(const Rational& r);

}  // namespace coxtop
