#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stackres/field.hpp"

namespace stackres {

// Dense univariate polynomial, coefficients low-to-high; the zero polynomial has none.
class UnivariatePoly {
 public:
  explicit UnivariatePoly(Field field = Field());
  UnivariatePoly(Field field, std::vector<Scalar> coefficients);
  // Coefficients given as small integers, low-to-high.
  static UnivariatePoly from_ints(Field field, const std::vector<long long>& coefficients);
  static UnivariatePoly monomial(const Scalar& c, unsigned exponent);
  static UnivariatePoly variable(Field field);

  Field field() const { return field_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(unsigned k) const;
  Scalar leading() const;

  UnivariatePoly operator-() const;
  friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
  friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
  UnivariatePoly operator*(const Scalar& c) const;
  friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b) = default;

  // Quotient and remainder; throws on a zero divisor.
  std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& divisor) const;
  UnivariatePoly operator/(const UnivariatePoly& divisor) const { return divmod(divisor).first; }
  UnivariatePoly operator%(const UnivariatePoly& divisor) const { return divmod(divisor).second; }
  UnivariatePoly monic() const;
  UnivariatePoly derivative() const;
  Scalar evaluate(const Scalar& x) const;
  // f(x^k)
  UnivariatePoly inflate(unsigned k) const;
  UnivariatePoly map(const FieldEmbedding& embedding) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  Field field_;
  std::vector<Scalar> coeffs_;
};

// Monic gcd; gcd(0, 0) = 0.
UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b);
UnivariatePoly pow_mod(const UnivariatePoly& base, const Integer& exponent, const UnivariatePoly& modulus);

struct UnivariateFactor {
  UnivariatePoly poly;  // monic
  unsigned multiplicity = 1;
  // False only for the unsplit non-linear residue over Q of degree >= 4.
  bool irreducible = true;
};

struct UnivariateFactorization {
  Scalar unit;
  // Sorted by degree, then coefficients from the top down, then multiplicity.
  std::vector<UnivariateFactor> factors;
  UnivariatePoly expand() const;
};

// Complete factorization over finite fields (result independent of the seed). Over Q only
// linear factors are split off; each squarefree non-linear residue is one factor.
UnivariateFactorization factor_univariate(const UnivariatePoly& f, std::uint64_t seed = 0);

// Distinct roots in the coefficient field, in canonical order.
std::vector<Scalar> roots_in_field(const UnivariatePoly& f, std::uint64_t seed = 0);

// Over finite fields: complete test. Over Q: decided for degree <= 3, throws otherwise.
bool is_irreducible(const UnivariatePoly& f);

struct ExtensionResult {
  Field field;
  FieldEmbedding embedding;
  Scalar root;
};

// Builds F_{q^d} for an irreducible polynomial of degree d >= 2 over F_q, with the embedding
// sending t to the smallest root of the old modulus, and the smallest root of the input.
ExtensionResult extend_field(Field base, const UnivariatePoly& irreducible, std::uint64_t seed = 0);

}  // namespace stackres
