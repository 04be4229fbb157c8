#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "disctower/error.hpp"

namespace disctower {

// GMP keeps mpq values canonical (lowest terms, positive denominator) through
// every arithmetic operation; only string construction needs an explicit
// canonicalize().
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar scalar_from_string(std::string_view text) {
  Scalar s;
  if (s.set_str(std::string(text), 10) != 0 || s.get_den() == 0) {
    throw Error(ErrorKind::InvalidArgument, "malformed rational '" + std::string(text) + "'");
  }
  s.canonicalize();
  return s;
}

/// Canonical "numerator/denominator" rendering; the denominator is always present.
inline std::string to_string(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

/// Shortest human rendering ("3", "-3/2").
inline std::string to_display_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline bool is_canonical(const Scalar& s) {
  if (sgn(s.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
  return g == 1;
}

}  // namespace disctower
