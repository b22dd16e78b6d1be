#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "stackres/mpoly.hpp"

namespace stackres {

// One coordinate change var[target] -> var[target] + coefficient * var[other]^exponent.
struct FrameStep {
  std::size_t target = 1;
  Scalar coefficient;
  unsigned exponent = 1;
};

// Coordinate changes taking the input polynomial to the working one. Variable names never
// change; the working polynomial is unit * f(substituted variables).
struct Frame {
  std::vector<std::string> variables;
  // Ring index of the parameter z with in(f) = z^nu; the other index is the parameter x.
  std::size_t z_index = 0;
  Scalar unit;
  std::vector<FrameStep> steps;

  std::size_t x_index() const { return 1 - z_index; }
  MPoly replay(const MPoly& original) const;
  std::string describe(const FrameStep& step) const;
};

struct NormalizedForm {
  MPoly poly;
  Frame frame;
  // True when in(f) is a unit times a power of a linear form and poly has in(poly) = z^nu.
  bool pure_power_initial = false;
};

// Decides whether in(f) = c * L^nu and, if so, rewrites f so that in = z^nu. Requires order >= 2.
NormalizedForm normalize_initial_form(const MPoly& f);

// min a / (nu - b) over support points (a, b) = (x exponent, z exponent) with b < nu;
// std::nullopt when every term is divisible by z^nu. Requires in(f) = z^nu.
std::optional<Rational> projected_vertex(const MPoly& f, std::size_t z_index);

// The lambda with vertex-initial form (z - lambda x^v)^nu, if any.
std::optional<Scalar> is_solvable(const MPoly& f, std::size_t z_index, const Rational& v);

struct SolveRecord {
  Rational vertex;
  Scalar lambda;
};

struct CharacteristicPolyhedron {
  Rational delta;
  unsigned nu = 0;
  MPoly working;
  Frame frame;
  MPoly F_nu;
  MPoly F_delta;
  bool pure_power_initial = false;
  // Vertices met while solving; the last entry is the unsolvable vertex delta.
  std::vector<SolveRecord> chain;
};

// Normalizes, then solves vertices until the vertex is not solvable. Throws PurePowerError
// when f is a unit times a power of a regular parameter (the reduced curve is smooth).
CharacteristicPolyhedron characteristic_polyhedron(const MPoly& f);

// Lexicographically ordered pair (a1, a2) = (nu, nu * delta).
struct Invariant {
  unsigned nu = 0;
  Rational delta = 1;
  Rational a1() const { return Rational(nu); }
  Rational a2() const { return Rational(nu) * delta; }
  std::string to_string() const;
  friend bool operator==(const Invariant& a, const Invariant& b) { return a.nu == b.nu && a.delta == b.delta; }
  friend std::strong_ordering operator<=>(const Invariant& a, const Invariant& b);
};

struct Center {
  Frame frame;
  // Exponent a_i attached to ring variable i: nu on z, nu * delta on x.
  std::array<Rational, 2> exponents;
  Invariant invariant;
};

// Coprime weights in ring variable order with ell = a_i * w_i.
struct ReducedCenter {
  std::int64_t w1 = 1;
  std::int64_t w2 = 1;
  std::int64_t ell = 1;
  WeightVector weights() const { return {w1, w2}; }
  friend bool operator==(const ReducedCenter&, const ReducedCenter&) = default;
};

ReducedCenter reduce_center(const std::array<Rational, 2>& exponents);

struct CenterAnalysis {
  Invariant invariant;
  Center center;
  ReducedCenter reduced;
  CharacteristicPolyhedron polyhedron;
};

// Full analysis at the origin. Throws PurePowerError if the reduced curve is smooth there and
// Error if f has order < 2.
CenterAnalysis compute_invariant_and_center(const MPoly& f);

// Monomial valuation with v(var i) = values[i].
struct MonomialValuation {
  std::array<Rational, 2> values;
  Rational operator()(const MPoly& g) const;
};

MonomialValuation valuation_of(const Center& center);
// min over terms of sum e_i / a_i.
Rational valuation(const Center& center, const MPoly& g);
// min over terms of sum e_i w_i, that is ell times the center's valuation.
Rational valuation(const ReducedCenter& center, const MPoly& g);
bool is_admissible(const Center& center, const MPoly& f);

// Minimal monomial generators (a, b) of {x1^a x2^b : a w1 + b w2 >= r}, by decreasing a.
std::vector<LatticePoint> valuation_ideal_generators(const ReducedCenter& rc, std::int64_t r);
// Vertices of the Newton polygon of that ideal: the smallest set whose integral closure is it.
std::vector<LatticePoint> integral_closure_generators(const ReducedCenter& rc, std::int64_t r);

}  // namespace stackres
