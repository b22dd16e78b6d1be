#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stackres/error.hpp"

namespace stackres {

using Integer = mpz_class;
using Rational = mpq_class;

// Q when characteristic == 0, otherwise F_{p^degree} = F_p[t]/(modulus).
struct FieldDescriptor {
  std::uint32_t characteristic = 0;
  unsigned degree = 1;
  // Low-to-high coefficients over F_p, monic, degree + 1 entries. Empty for Q and for F_p.
  std::vector<std::uint32_t> modulus;
};

class Scalar;

// Handle to an interned FieldDescriptor. Two handles compare equal iff they denote the
// same field with the same modulus. Default-constructed handles denote Q.
class Field {
 public:
  Field();

  static Field rationals();
  static Field prime(std::uint32_t p);
  // Validates that p is prime and that the modulus is monic and irreducible over F_p.
  static Field extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  // F_{p^degree} with the smallest monic irreducible modulus in lexicographic order
  // (coefficients compared from t^{degree-1} down to t^0).
  static Field with_degree(std::uint32_t p, unsigned degree);
  // "Q", "F2", "F3", "F9" (generated modulus) or "F9:t^2+1" (explicit modulus).
  static Field parse(std::string_view spec);

  const FieldDescriptor& descriptor() const { return *desc_; }
  bool is_rational() const { return desc_->characteristic == 0; }
  bool is_prime() const { return desc_->characteristic != 0 && desc_->degree == 1; }
  std::uint32_t characteristic() const { return desc_->characteristic; }
  unsigned degree() const { return desc_->degree; }
  // Number of elements; 0 for Q.
  Integer order() const;
  // Round-trips through parse().
  std::string spec() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  // Throws if the denominator is not invertible in the field.
  Scalar from_rational(const Rational& value) const;
  // Element sum_i c_i t^i of an extension field (or c_0 of a prime field).
  Scalar from_residues(std::span<const std::int64_t> residues) const;
  // The class of t in an extension field.
  Scalar generator() const;
  // Every element, in canonical order. Finite fields with at most 2^20 elements only.
  std::vector<Scalar> elements() const;
  // Uniform element of a finite field; a small integer in [-9, 9] for Q.
  Scalar random(std::mt19937_64& rng) const;

  friend bool operator==(const Field& a, const Field& b) { return a.desc_ == b.desc_; }

 private:
  explicit Field(const FieldDescriptor* desc) : desc_(desc) {}
  const FieldDescriptor* desc_;
};

// An exact element of a Field, stored in canonical form: reduced rationals with a positive
// denominator, or residues in [0, p) of a representative of degree < r.
class Scalar {
 public:
  // Zero in Q.
  Scalar();

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  const Rational& rational() const;
  std::uint64_t prime_value() const;
  // Residue vector of length degree() for any finite field.
  std::vector<std::uint32_t> residues() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(const Integer& exponent) const;
  Scalar pow(std::uint64_t exponent) const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Canonical total order: numeric for Q, residues compared from the highest power of t down
  // (the base-p integer encoding) for finite fields.
  friend std::strong_ordering canonical_compare(const Scalar& a, const Scalar& b);

 private:
  friend class Field;
  using Extension = std::vector<std::uint32_t>;
  Scalar(Field field, Rational value) : field_(field), value_(std::move(value)) {}
  Scalar(Field field, std::uint64_t value) : field_(field), value_(value) {}
  Scalar(Field field, Extension value) : field_(field), value_(std::move(value)) {}
  void check_same_field(const Scalar& other) const;

  Field field_;
  std::variant<Rational, std::uint64_t, Extension> value_;
};

// The unique b with b^(p^e) = a. Only e = 0 is meaningful in characteristic 0.
Scalar frobenius_root(const Scalar& a, unsigned e);

// Ring homomorphism F_q -> F_{q^d} determined by the image of the generator t.
class FieldEmbedding {
 public:
  static FieldEmbedding identity(Field field);
  FieldEmbedding(Field source, Field target, Scalar generator_image);

  Field source() const { return source_; }
  Field target() const { return target_; }
  const Scalar& generator_image() const { return generator_image_; }
  Scalar operator()(const Scalar& a) const;
  bool is_identity() const { return source_ == target_; }

 private:
  Field source_;
  Field target_;
  Scalar generator_image_;
};

bool is_prime_number(std::uint64_t n);
// Binomial coefficient reduced into the field.
Scalar binomial(Field field, unsigned n, unsigned k);

}  // namespace stackres

template <>
struct std::hash<stackres::Scalar> {
  std::size_t operator()(const stackres::Scalar& s) const noexcept { return s.hash(); }
};
