#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace weakll {

/// Exact rational scalar. Always kept in lowest terms with a positive
/// denominator (GMP canonical form); division by zero throws.
using Scalar = boost::multiprecision::mpq_rational;

/// Arbitrary-precision integer, used for combinatorial counts.
using BigInt = boost::multiprecision::mpz_int;

inline std::string scalar_to_string(const Scalar& s) { return s.str(); }

/// Parses "p" or "p/q". Rejects zero denominators and malformed input.
inline Scalar scalar_from_string(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Scalar(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("scalar: zero denominator: " + text);
    return Scalar(num) / Scalar(den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("scalar: malformed rational: " + text);
  }
}

}  // namespace weakll
