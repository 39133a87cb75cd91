#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "hyperocta/errors.hpp"

namespace hyperocta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// C(n, k) in native width; desk-scale guard against overflow.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;
  }
  if (acc > Int(UINT64_MAX)) throw DomainError("binomial: result exceeds 64 bits");
  return acc.convert_to<std::uint64_t>();
}

// Exact "p" or "p/q" strings; no decimal forms.
inline std::string rat_to_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw DomainError("empty rational string");
  if (s.find('.') != std::string::npos)
    throw DomainError("decimal rational strings are not accepted: " + s);
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw DomainError("malformed rational string: " + s);
  }
}

inline Int int_from_string(const std::string& s) {
  if (s.empty()) throw DomainError("empty integer string");
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw DomainError("malformed integer string: " + s);
  }
}

// Floored quotient for b > 0: remainder lands in [0, b).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b < 0) --q;
  return q;
}

// g = s*a + t*b with g = gcd(a,b) >= 0.
inline void xgcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  Int r0 = a, r1 = b;
  Int s0 = 1, s1 = 0;
  Int t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = s0 - q * s1; s0 = s1; s1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  g = r0; s = s0; t = t0;
}

}  // namespace hyperocta
