#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace hq {

using Bint = boost::multiprecision::cpp_int;

inline Bint ipow(long q, long e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  Bint base = q, result = 1;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

// x*(x-1)/2; always integral.
inline Bint binom2(long x) { return Bint(x) * (x - 1) / 2; }

inline Bint exact_div(const Bint& a, const Bint& b) {
  Bint quo, rem;
  boost::multiprecision::divide_qr(a, b, quo, rem);
  if (rem != 0) throw std::logic_error("exact_div: nonzero remainder");
  return quo;
}

// Gaussian binomial [n choose k]_q = prod_{i=1..k} (q^{n+1-i}-1)/(q^i-1).
// Returns 0 outside 0 <= k <= n. Every partial product is itself a Gaussian
// binomial, so the stepwise division is exact.
inline Bint gauss_binom(long n, long k, long q) {
  if (q < 2) throw std::invalid_argument("gauss_binom: q < 2");
  if (k < 0 || k > n) return 0;
  Bint result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= ipow(q, n + 1 - i) - 1;
    result = exact_div(result, ipow(q, i) - 1);
  }
  return result;
}

}  // namespace hq
