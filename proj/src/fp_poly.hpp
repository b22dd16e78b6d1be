#pragma once

// Dense polynomials over a prime field F_p, coefficients low-to-high in [0, p).
// Internal helpers shared by the field registry and the univariate factorizer.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stackres::fp {

using Poly = std::vector<std::uint32_t>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a * b) % p; }

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("division by zero in F_p");
  return powmod(a, p - 2, p);
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t s = (i < a.size() ? a[i] : 0) + p - (i < b.size() ? b[i] : 0);
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  }
  Poly r(acc.begin(), acc.end());
  trim(r);
  return r;
}

inline Poly scale(const Poly& a, std::uint64_t c, std::uint64_t p) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>(mulmod(a[i], c, p));
  trim(r);
  return r;
}

// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const std::uint64_t lead_inv = inverse(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t c = mulmod(a[k + b.size() - 1], lead_inv, p);
    q[k] = static_cast<std::uint32_t>(c);
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t t = mulmod(c, b[j], p);
      a[k + j] = static_cast<std::uint32_t>((a[k + j] + p - t) % p);
    }
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly rem(const Poly& a, const Poly& m, std::uint64_t p) { return divmod(a, m, p).second; }

inline Poly monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, inverse(a.back(), p), p);
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

// Inverse of a modulo m (gcd must be 1).
inline Poly inverse_mod(const Poly& a, const Poly& m, std::uint64_t p) {
  Poly r0 = m, r1 = rem(a, m, p);
  Poly s0, s1 = {1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    Poly s = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw std::domain_error("element is not invertible modulo the given polynomial");
  return rem(scale(s0, inverse(r0[0], p), p), m, p);
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) { return rem(mul(a, b, p), m, p); }

inline Poly powmod(Poly a, mpz_class e, const Poly& m, std::uint64_t p) {
  Poly r = rem(Poly{1}, m, p);
  a = rem(a, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, m, p);
    e >>= 1;
    if (e > 0) a = mulmod(a, a, m, p);
  }
  return r;
}

inline std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's irreducibility test.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly x = {0, 1};
  // frob[k] = x^(p^k) mod f
  std::vector<Poly> frob(n + 1);
  frob[0] = rem(x, f, p);
  for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], mpz_class(static_cast<unsigned long>(p)), f, p);
  if (sub(frob[n], frob[0], p) != Poly{}) return false;
  for (unsigned q : prime_divisors(static_cast<unsigned>(n))) {
    Poly g = gcd(f, sub(frob[n / q], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace stackres::fp
