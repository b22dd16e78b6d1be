#include "stackres/charpoly.hpp"

#include <algorithm>
#include <numeric>

namespace stackres {

namespace {

constexpr int kMaxSolveSteps = 20000;

void require_plane_curve(const MPoly& f) {
  if (f.nvars() != 2) throw Error("expected a polynomial in exactly two variables");
  if (f.is_zero()) throw Error("the zero polynomial does not define a curve");
}

// p^e with nu = p^e m and p not dividing m; 1 in characteristic 0.
unsigned frobenius_part(unsigned nu, unsigned p, unsigned& e) {
  e = 0;
  unsigned pe = 1;
  if (p == 0) return 1;
  while (nu % p == 0) {
    nu /= p;
    pe *= p;
    ++e;
  }
  return pe;
}

Exponents pair_exponents(std::size_t x_index, unsigned a, unsigned b) {
  Exponents e{};
  e[x_index] = a;
  e[1 - x_index] = b;
  return e;
}

MPoly apply_step(const MPoly& g, const FrameStep& step) {
  const Field field = g.field();
  const auto& vars = g.variables();
  std::vector<MPoly> images = {MPoly::variable(field, vars, 0), MPoly::variable(field, vars, 1)};
  Exponents e{};
  e[1 - step.target] = step.exponent;
  images[step.target] += MPoly::monomial(field, vars, e, step.coefficient);
  return g.substitute(images);
}

// (z + c x^k)^nu in the ring of g.
MPoly binomial_power(const MPoly& g, std::size_t z_index, const Scalar& c, unsigned k, unsigned nu) {
  const auto& vars = g.variables();
  Exponents e{};
  e[1 - z_index] = k;
  MPoly base = MPoly::variable(g.field(), vars, z_index) + MPoly::monomial(g.field(), vars, e, c);
  return base.pow(nu);
}

bool is_z_power(const MPoly& initial, std::size_t z_index, unsigned nu) {
  if (initial.size() != 1) return false;
  const auto& [e, c] = initial.terms().front();
  return c.is_one() && e[z_index] == nu;
}

}  // namespace

MPoly Frame::replay(const MPoly& original) const {
  MPoly g = original;
  for (const auto& step : steps) g = apply_step(g, step);
  return g * unit;
}

std::string Frame::describe(const FrameStep& step) const {
  const std::string& z = variables[step.target];
  const std::string& x = variables[1 - step.target];
  std::string c = step.coefficient.to_string();
  bool negative = !c.empty() && c[0] == '-';
  if (negative) c.erase(0, 1);
  if (c.find('+') != std::string::npos) c = "(" + c + ")";
  std::string mono = x + (step.exponent > 1 ? "^" + std::to_string(step.exponent) : "");
  return z + " -> " + z + (negative ? " - " : " + ") + (c == "1" ? "" : c + "*") + mono;
}

NormalizedForm normalize_initial_form(const MPoly& f) {
  require_plane_curve(f);
  const unsigned nu = order_at_origin(f);
  if (nu < 2) throw Error("order " + std::to_string(nu) + " at the origin: not a singular point");
  const Field field = f.field();
  NormalizedForm out{f, Frame{f.variables(), 0, field.one(), {}}, false};
  const MPoly in = f.homogeneous_part(nu);
  const std::size_t z = in.coefficient(pair_exponents(1, 0, nu)).is_zero() ? 1 : 0;
  const std::size_t x = 1 - z;
  const Scalar c = in.coefficient(pair_exponents(x, 0, nu));
  if (c.is_zero()) return out;  // neither axis carries a pure power term, so in is not c*z^nu

  unsigned e = 0;
  const unsigned pe = frobenius_part(nu, field.characteristic(), e);
  const Scalar coef = in.coefficient(pair_exponents(x, pe, nu - pe));
  const Scalar lambda = frobenius_root(coef / (c * binomial(field, nu, pe)), e);
  if (!(binomial_power(f, z, lambda, 1, nu) * c == in)) return out;

  out.pure_power_initial = true;
  out.frame.z_index = z;
  out.frame.unit = c.inverse();
  MPoly g = f;
  if (!lambda.is_zero()) {
    FrameStep step{z, -lambda, 1};
    out.frame.steps.push_back(step);
    g = apply_step(g, step);
  }
  out.poly = g * out.frame.unit;
  return out;
}

std::optional<Rational> projected_vertex(const MPoly& f, std::size_t z_index) {
  require_plane_curve(f);
  const unsigned nu = order_at_origin(f);
  if (!is_z_power(f.homogeneous_part(nu), z_index, nu)) throw Error("projected vertex needs a normalized initial form z^nu");
  const std::size_t x = 1 - z_index;
  std::optional<Rational> best;
  for (const auto& [e, c] : f.terms()) {
    if (e[z_index] >= nu) continue;
    Rational q(e[x], nu - e[z_index]);
    q.canonicalize();
    if (!best || q < *best) best = q;
  }
  return best;
}

std::optional<Scalar> is_solvable(const MPoly& f, std::size_t z_index, const Rational& v) {
  auto vertex = projected_vertex(f, z_index);
  if (!vertex || *vertex != v) throw Error("vertex " + v.get_str() + " does not match the projected polyhedron");
  if (v.get_den() != 1 || !v.get_num().fits_uint_p()) return std::nullopt;
  const unsigned k = static_cast<unsigned>(v.get_num().get_ui());
  const unsigned nu = order_at_origin(f);
  const std::size_t x = 1 - z_index;
  WeightVector w(2);
  w[x] = 1;
  w[z_index] = k;
  const MPoly vertex_form = weighted_initial(f, w);
  const Field field = f.field();
  unsigned e = 0;
  const unsigned pe = frobenius_part(nu, field.characteristic(), e);
  // Coefficient of x^{k p^e} z^{nu - p^e} in (z - lambda x^k)^nu is m (-lambda)^{p^e}.
  const Scalar coef = vertex_form.coefficient(pair_exponents(x, k * pe, nu - pe));
  const Scalar lambda = -frobenius_root(coef / binomial(field, nu, pe), e);
  if (lambda.is_zero()) return std::nullopt;
  if (!(binomial_power(f, z_index, -lambda, k, nu) == vertex_form)) return std::nullopt;
  return lambda;
}

CharacteristicPolyhedron characteristic_polyhedron(const MPoly& f) {
  require_plane_curve(f);
  const unsigned nu = order_at_origin(f);
  if (nu < 2) throw Error("order " + std::to_string(nu) + " at the origin: not a singular point");
  NormalizedForm norm = normalize_initial_form(f);
  CharacteristicPolyhedron out;
  out.nu = nu;
  out.frame = norm.frame;
  out.working = norm.poly;
  out.pure_power_initial = norm.pure_power_initial;
  out.F_nu = out.working.homogeneous_part(nu);
  if (!norm.pure_power_initial) {
    out.delta = 1;
    out.F_delta = out.F_nu;
    return out;
  }
  const std::size_t z = out.frame.z_index;
  // A unit times (z - g(x))^nu with g a non-terminating series never stops solving, so after a
  // generous number of steps the radical decides whether that is the situation.
  const int radical_check_at = 2 * static_cast<int>(f.degree()) + 8;
  for (int iteration = 0;; ++iteration) {
    if (iteration == radical_check_at && order_at_origin(radical(f)) <= 1)
      throw PurePowerError("f is a unit times a power of a regular parameter");
    if (iteration > kMaxSolveSteps) throw LimitExceeded("vertex solving did not terminate");
    auto v = projected_vertex(out.working, z);
    if (!v) throw PurePowerError("projected polyhedron is empty: f is a unit times z^nu");
    auto lambda = is_solvable(out.working, z, *v);
    out.chain.push_back({*v, lambda.value_or(f.field().zero())});
    if (!lambda) {
      out.delta = *v;
      break;
    }
    FrameStep step{z, *lambda, static_cast<unsigned>(v->get_num().get_ui())};
    out.frame.steps.push_back(step);
    out.working = apply_step(out.working, step);
  }
  out.F_nu = out.working.homogeneous_part(nu);
  out.F_delta = out.F_nu;
  const std::size_t x = 1 - z;
  for (const auto& [e, c] : out.working.terms()) {
    if (e[z] >= nu || e[x] + e[z] == nu) continue;
    Rational q(e[x], nu - e[z]);
    q.canonicalize();
    if (q == out.delta) out.F_delta += MPoly::monomial(f.field(), f.variables(), e, c);
  }
  return out;
}

std::string Invariant::to_string() const { return "(" + a1().get_str() + ", " + a2().get_str() + ")"; }

std::strong_ordering operator<=>(const Invariant& a, const Invariant& b) {
  if (a.nu != b.nu) return a.nu <=> b.nu;
  int c = cmp(a.a2(), b.a2());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ReducedCenter reduce_center(const std::array<Rational, 2>& exponents) {
  for (const auto& a : exponents)
    if (a <= 0) throw Error("center exponents must be positive");
  Integer ell;
  mpz_lcm(ell.get_mpz_t(), exponents[0].get_num_mpz_t(), exponents[1].get_num_mpz_t());
  Integer w1 = ell * exponents[0].get_den() / exponents[0].get_num();
  Integer w2 = ell * exponents[1].get_den() / exponents[1].get_num();
  if (gcd(w1, w2) != 1) throw Error("center exponents admit no integral reduced center");
  if (!ell.fits_slong_p() || !w1.fits_slong_p() || !w2.fits_slong_p()) throw LimitExceeded("center weights overflow");
  return {w1.get_si(), w2.get_si(), ell.get_si()};
}

CenterAnalysis compute_invariant_and_center(const MPoly& f) {
  CenterAnalysis out;
  out.polyhedron = characteristic_polyhedron(f);
  const auto& poly = out.polyhedron;
  out.invariant = Invariant{poly.nu, poly.delta};
  out.center.frame = poly.frame;
  out.center.invariant = out.invariant;
  out.center.exponents[poly.frame.z_index] = out.invariant.a1();
  out.center.exponents[poly.frame.x_index()] = out.invariant.a2();
  out.reduced = reduce_center(out.center.exponents);
  return out;
}

Rational MonomialValuation::operator()(const MPoly& g) const {
  if (g.is_zero()) throw Error("valuation of the zero polynomial is undefined");
  if (g.nvars() != 2) throw Error("monomial valuations are defined on two variables");
  std::optional<Rational> best;
  for (const auto& [e, c] : g.terms()) {
    Rational v = values[0] * e[0] + values[1] * e[1];
    if (!best || v < *best) best = v;
  }
  return *best;
}

MonomialValuation valuation_of(const Center& center) {
  return {{Rational(1) / center.exponents[0], Rational(1) / center.exponents[1]}};
}

Rational valuation(const Center& center, const MPoly& g) { return valuation_of(center)(g); }

Rational valuation(const ReducedCenter& center, const MPoly& g) {
  return MonomialValuation{{Rational(center.w1), Rational(center.w2)}}(g);
}

bool is_admissible(const Center& center, const MPoly& f) { return valuation(center, f) >= 1; }

std::vector<LatticePoint> valuation_ideal_generators(const ReducedCenter& rc, std::int64_t r) {
  if (r < 1) throw Error("valuation ideal index must be positive");
  std::vector<LatticePoint> out;
  std::int64_t previous_b = -1;
  for (std::int64_t a = 0;; ++a) {
    std::int64_t rest = r - a * rc.w1;
    std::int64_t b = rest <= 0 ? 0 : (rest + rc.w2 - 1) / rc.w2;
    if (previous_b < 0 || b < previous_b) out.push_back({a, b});
    previous_b = b;
    if (b == 0) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> integral_closure_generators(const ReducedCenter& rc, std::int64_t r) {
  auto vertices = newton_polygon(valuation_ideal_generators(rc, r)).vertices;
  std::reverse(vertices.begin(), vertices.end());
  return vertices;
}

}  // namespace stackres
