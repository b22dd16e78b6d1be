#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stackres/charpoly.hpp"

namespace stackres {

// Complete fan of the first quadrant: primitive rays by increasing slope from e1 to e2.
struct Fan2D {
  std::vector<LatticePoint> rays;

  std::vector<std::pair<LatticePoint, LatticePoint>> cones() const;
  // det(rays[i], rays[i + 1]) for each cone.
  std::vector<std::int64_t> determinants() const;
  friend bool operator==(const Fan2D&, const Fan2D&) = default;
};

// Validates the rays (primitive, in the quadrant, strictly increasing slope, e1 first, e2 last).
Fan2D make_fan(std::vector<LatticePoint> rays);
std::int64_t determinant(const LatticePoint& a, const LatticePoint& b);

enum class BlowupKind { Weighted, Multiweighted };
std::string to_string(BlowupKind kind);

struct BlowupChart {
  BlowupKind kind = BlowupKind::Weighted;
  // "x1' != 0" style label naming the inverted coordinates.
  std::string label;
  std::pair<LatticePoint, LatticePoint> cone;
  std::vector<std::string> inverted;
  std::array<std::string, 2> slice;
  std::int64_t stabilizer_order = 1;
  // A generator zeta of mu_n acts on the slice coordinates by zeta^weight, weights reduced
  // into (-n/2, n/2].
  std::array<std::int64_t, 2> stabilizer_weights{};
  bool deligne_mumford = true;
  // Slice coordinates that cut out exceptional divisors.
  std::vector<std::string> exceptional;
};

struct Blowup {
  BlowupKind kind = BlowupKind::Weighted;
  Field field;
  // Weights in the order of source_variables; for the multi-weighted blow-up the source
  // variables are oriented so that p divides w1.
  std::int64_t w1 = 1, w2 = 1;
  std::int64_t kappa = 0;
  bool swapped = false;
  std::vector<std::string> source_variables;
  // x1', x2', s and, when multi-weighted, u.
  std::vector<std::string> target_variables;
  // Images of source_variables[0] and source_variables[1].
  std::array<MPoly, 2> transform;
  Fan2D fan;
  std::vector<BlowupChart> charts;
  // Order in which charts claim points lying in several of them.
  std::vector<std::size_t> processing_order;
  bool deligne_mumford = true;

  // Applies the transform to a polynomial in source_variables (any order).
  MPoly pullback(const MPoly& f) const;
  const std::string& s() const { return target_variables[2]; }
  std::optional<std::string> u() const;
};

// Two charts x1' != 0 (mu_{w1}) and x2' != 0 (mu_{w2}) of x_i = s^{w_i} x_i'. The variables
// are the ring variables of the center's working polynomial, paired with (w1, w2).
Blowup weighted_blowup(const ReducedCenter& rc, const std::vector<std::string>& variables, Field field);

// Rays [e1, w, u, e2] with u = (1, kappa), kappa = ceil(w2 / w1), after orienting so that p | w1.
// Throws unless p > 0 divides w1 * w2.
Fan2D multiweighted_fan(const ReducedCenter& rc, unsigned p);
Blowup multiweighted_blowup(const ReducedCenter& rc, const std::vector<std::string>& variables, Field field);

struct ProperTransform {
  MPoly f_prime;
  std::int64_t alpha = 0;
  std::optional<std::int64_t> beta;
};

ProperTransform proper_transform(const MPoly& f, const Blowup& b);
// s^alpha u^beta f' with s = u = 1 and primes dropped: should reproduce f.
MPoly recompose_at_unit(const ProperTransform& pt, const Blowup& b);
// f' with the chart's inverted coordinates set to 1, as a polynomial in the slice coordinates.
MPoly chart_restriction(const ProperTransform& pt, const Blowup& b, const BlowupChart& chart);

// Normal fan of the Newton polygon of monomial generators (a, b) = x1^a x2^b.
Fan2D dual_fan_check(const std::vector<LatticePoint>& generators);

// Controlled transform of a monomial ideal: pulled-back generators divided by the largest
// common power of s (and u). Exponents are in target_variables order.
std::vector<Exponents> controlled_transform(const std::vector<LatticePoint>& generators, const Blowup& b);
// Minimal squarefree monomials generating the radical of a monomial ideal.
std::vector<Exponents> monomial_radical(const std::vector<Exponents>& generators, std::size_t nvars);

}  // namespace stackres
