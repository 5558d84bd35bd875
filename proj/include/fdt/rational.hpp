#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include <nlohmann/json_fwd.hpp>

namespace fdt {

// Exact rational scalar used for probabilities, tree costs, biases and all
// LP data. Doubles are reserved for quantities that involve square roots
// or logarithms (scores, distances).
using Rational = mpq_class;
using Integer = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

// The mpq_class(num, den) constructor does not canonicalize, and GMP
// arithmetic requires canonical operands; construct through these helpers
// whenever num and den may share a factor.
inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Every finite double is a dyadic rational; the conversion is exact.
inline Rational rational_from_double(double x);

// Parses "3", "-1/2", "0.25". Exact: decimal strings become num/10^k.
Rational parse_rational(const std::string& text);

// Best rational approximation with denominator <= max_den, by walking the
// continued-fraction convergents of x.
Rational rationalize(const Rational& x, const Integer& max_den);

// JSON encoding {"num": i, "den": j}; values that fit in int64 are emitted
// as numbers, anything larger as decimal strings.
nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j);

inline Rational rational_from_double(double x) {
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace fdt
