#pragma once

// Word-sized arithmetic modulo the Mersenne prime 2^61 - 1, used for cheap modular images of
// polynomials over Q.

#include <cstdint>
#include <optional>
#include <vector>

#include "stackres/field.hpp"

namespace stackres::modp {

constexpr std::uint64_t kPrime = 2305843009213693951ull;

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) { return (a + b) % kPrime; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }

inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

inline std::uint64_t inverse(std::uint64_t a) { return power(a, kPrime - 2); }

inline std::uint64_t reduce(const Integer& v) {
  static const Integer p(std::to_string(kPrime));
  Integer m;
  mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return mpz_get_ui(m.get_mpz_t());
}

// Empty when the denominator vanishes modulo the prime.
inline std::optional<std::uint64_t> reduce(const Rational& q) {
  const std::uint64_t d = reduce(Integer(q.get_den()));
  if (d == 0) return std::nullopt;
  return mul(reduce(Integer(q.get_num())), inverse(d));
}

using Poly = std::vector<std::uint64_t>;  // ascending coefficients, no trailing zeros

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly derivative(const Poly& f) {
  Poly d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(mul(f[k], k % kPrime));
  trim(d);
  return d;
}

// Degree of the monic gcd; -1 only when both inputs are zero.
inline int gcd_degree(Poly x, Poly y) {
  trim(x);
  trim(y);
  while (!y.empty()) {
    const std::uint64_t inv = inverse(y.back());
    while (x.size() >= y.size()) {
      const std::uint64_t c = mul(x.back(), inv);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] = sub(x[shift + j], mul(c, y[j]));
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

}  // namespace stackres::modp
