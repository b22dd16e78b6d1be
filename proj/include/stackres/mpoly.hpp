#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackres/upoly.hpp"

namespace stackres {

inline constexpr std::size_t kMaxVariables = 4;
using Exponents = std::array<std::uint32_t, kMaxVariables>;
// Non-negative weights, one per variable. Unused trailing entries are ignored.
using WeightVector = std::vector<std::int64_t>;

unsigned total_degree(const Exponents& e);
// Graded-lex: larger total degree first, then lexicographically larger exponent vector.
bool graded_lex_greater(const Exponents& a, const Exponents& b);

// Sparse polynomial in 1..4 named variables over a Field. Terms are kept in graded-lex
// descending order with no zero coefficients, so equality is structural.
class MPoly {
 public:
  using Term = std::pair<Exponents, Scalar>;

  MPoly();
  MPoly(Field field, std::vector<std::string> variables);
  static MPoly constant(Field field, std::vector<std::string> variables, const Scalar& c);
  static MPoly variable(Field field, std::vector<std::string> variables, std::size_t index);
  static MPoly monomial(Field field, std::vector<std::string> variables, const Exponents& e, const Scalar& c);
  // Sums duplicate exponents and drops zeros.
  static MPoly from_terms(Field field, std::vector<std::string> variables, std::vector<Term> terms);

  Field field() const { return field_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  // Throws if the name is unknown.
  std::size_t index_of(const std::string& name) const;
  bool has_variable(const std::string& name) const;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const Exponents& e) const;
  const Term& leading_term() const;
  unsigned degree() const;
  unsigned degree_in(std::size_t var) const;
  // Smallest exponent of the variable over the support.
  unsigned min_degree_in(std::size_t var) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& other);
  MPoly& operator-=(const MPoly& other);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator*(const Scalar& c) const;
  MPoly pow(unsigned k) const;
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly derivative(std::size_t var) const;
  // Sets one variable to a constant; the variable stays in the ring.
  MPoly evaluate_at(std::size_t var, const Scalar& value) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;
  // Ring homomorphism sending variable i to images[i]; all images share one ring.
  MPoly substitute(const std::vector<MPoly>& images) const;
  // Re-express in a ring with the given variable names; every variable actually used
  // must be present there.
  MPoly in_ring(const std::vector<std::string>& variables) const;
  MPoly rename(const std::vector<std::string>& variables) const;
  MPoly map_coefficients(const FieldEmbedding& embedding) const;
  // Terms of total degree exactly d.
  MPoly homogeneous_part(unsigned d) const;
  // Univariate view when only `var` occurs.
  UnivariatePoly to_univariate(std::size_t var) const;
  static MPoly from_univariate(const UnivariatePoly& u, std::vector<std::string> variables, std::size_t var);
  // Divides by the coefficient of the leading term.
  MPoly monic() const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  void check_compatible(const MPoly& other) const;
  void normalize();
  Field field_;
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

// Minimal total degree of a term. Throws on the zero polynomial.
unsigned order_at_origin(const MPoly& f);
std::int64_t weighted_order(const MPoly& f, const WeightVector& v);
// Sum of the terms attaining the weighted order, as a polynomial in the same variables.
MPoly weighted_initial(const MPoly& f, const WeightVector& v);
MPoly initial_form(const MPoly& f);

// Substitution by variable name; unlisted variables map to themselves (possibly renamed into
// the target ring of the images).
MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& images);

struct DividedOut {
  MPoly quotient;
  std::vector<unsigned> exponents;  // one per listed variable
};
// f = (prod vars^exponents) * quotient with no listed variable dividing the quotient.
DividedOut divide_out_variables(const MPoly& f, const std::vector<std::string>& vars);

// x_i -> x_i + point[i]
MPoly translate(const MPoly& f, const std::vector<Scalar>& point);

// Exact quotient if b divides a.
std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b);
// Greatest common divisor of polynomials in at most two variables, leading coefficient 1.
MPoly gcd(const MPoly& a, const MPoly& b);
// Squarefree part of a polynomial in two variables, leading coefficient 1.
MPoly radical(const MPoly& f);
// True if a = c * b for a nonzero scalar c.
bool associated(const MPoly& a, const MPoly& b);

using LatticePoint = std::array<std::int64_t, 2>;

struct NewtonEdge {
  LatticePoint from;
  LatticePoint to;
  // Primitive inner normal with positive components.
  LatticePoint normal;
};

// Lower-left boundary of conv(support) + R_{>=0}^2.
struct NewtonPolygon {
  std::vector<LatticePoint> points;    // distinct support points, sorted
  std::vector<LatticePoint> vertices;  // compact-face vertices by increasing first coordinate
  std::vector<NewtonEdge> edges;
};

NewtonPolygon newton_polygon(const std::vector<LatticePoint>& points);
NewtonPolygon newton_polygon(const MPoly& f, std::size_t first = 0, std::size_t second = 1);

}  // namespace stackres
