#pragma once

// Random inputs for property tests. Everything is driven by an explicit seed.

#include <random>
#include <string>
#include <vector>

#include "stackres/mpoly.hpp"

namespace testgen {

using namespace stackres;

inline MPoly random_poly(Field field, const std::vector<std::string>& vars, unsigned max_degree, unsigned terms,
                         std::mt19937_64& rng, unsigned min_degree = 0) {
  std::vector<MPoly::Term> out;
  std::uniform_int_distribution<unsigned> deg(min_degree, max_degree);
  for (unsigned k = 0; k < terms; ++k) {
    unsigned d = deg(rng);
    Exponents e{};
    for (unsigned step = 0; step < d; ++step) e[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]++;
    out.emplace_back(e, field.random(rng));
  }
  return MPoly::from_terms(field, vars, std::move(out));
}

inline MPoly var(Field field, const std::vector<std::string>& vars, std::size_t i) { return MPoly::variable(field, vars, i); }

inline MPoly constant(Field field, const std::vector<std::string>& vars, long long c) {
  return MPoly::constant(field, vars, field.from_int(c));
}

inline Scalar nonzero(Field field, std::mt19937_64& rng) {
  while (true) {
    Scalar s = field.random(rng);
    if (!s.is_zero()) return s;
  }
}

// Origin-fixing local coordinate change x -> u*x + h(x), y -> v*y + c*x + b(x, y) with u, v
// nonzero and h, b of order >= 2. The linear part is invertible, so this is an automorphism of
// the completed local ring at the origin.
inline std::vector<MPoly> random_triangular_automorphism(Field field, const std::vector<std::string>& vars, std::mt19937_64& rng,
                                                         unsigned max_degree = 3) {
  MPoly x = var(field, vars, 0), y = var(field, vars, 1);
  MPoly h(field, vars);
  for (unsigned d = 2; d <= max_degree; ++d) h += x.pow(d) * field.random(rng);
  MPoly b = random_poly(field, vars, max_degree, 3, rng, 2);
  MPoly img_x = x * nonzero(field, rng) + h;
  MPoly img_y = y * nonzero(field, rng) + x * field.random(rng) + b;
  return {img_x, img_y};
}

}  // namespace testgen
