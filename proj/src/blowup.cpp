#include "stackres/blowup.hpp"

#include <algorithm>
#include <numeric>

namespace stackres {

namespace {

std::int64_t reduce_weight(std::int64_t w, std::int64_t n) {
  if (n <= 1) return 0;
  std::int64_t r = ((w % n) + n) % n;
  return 2 * r > n ? r - n : r;
}

std::string primed(const std::string& name) { return name + "'"; }

std::string label_for(const std::vector<std::string>& inverted) {
  std::string out;
  for (const auto& v : inverted) out += (out.empty() ? "" : "*") + v;
  return out + " != 0";
}

BlowupChart make_chart(BlowupKind kind, std::pair<LatticePoint, LatticePoint> cone, std::vector<std::string> inverted,
                       std::array<std::string, 2> slice, std::array<std::int64_t, 2> weights, std::vector<std::string> exceptional,
                       unsigned p) {
  BlowupChart c;
  c.kind = kind;
  c.label = label_for(inverted);
  c.cone = cone;
  c.inverted = std::move(inverted);
  c.slice = std::move(slice);
  c.stabilizer_order = std::abs(determinant(cone.first, cone.second));
  c.stabilizer_weights = {reduce_weight(weights[0], c.stabilizer_order), reduce_weight(weights[1], c.stabilizer_order)};
  c.deligne_mumford = p == 0 || c.stabilizer_order % p != 0;
  c.exceptional = std::move(exceptional);
  return c;
}

void check_reduced(const ReducedCenter& rc) {
  if (rc.w1 < 1 || rc.w2 < 1 || std::gcd(rc.w1, rc.w2) != 1) throw Error("blow-up weights must be coprime positive integers");
}

MPoly monomial_in(const Field& field, const std::vector<std::string>& vars, const std::vector<std::int64_t>& exps) {
  Exponents e{};
  for (std::size_t i = 0; i < exps.size(); ++i) e[i] = static_cast<std::uint32_t>(exps[i]);
  return MPoly::monomial(field, vars, e, field.one());
}

}  // namespace

std::int64_t determinant(const LatticePoint& a, const LatticePoint& b) { return a[0] * b[1] - a[1] * b[0]; }

std::vector<std::pair<LatticePoint, LatticePoint>> Fan2D::cones() const {
  std::vector<std::pair<LatticePoint, LatticePoint>> out;
  for (std::size_t i = 0; i + 1 < rays.size(); ++i) out.emplace_back(rays[i], rays[i + 1]);
  return out;
}

std::vector<std::int64_t> Fan2D::determinants() const {
  std::vector<std::int64_t> out;
  for (const auto& [a, b] : cones()) out.push_back(determinant(a, b));
  return out;
}

Fan2D make_fan(std::vector<LatticePoint> rays) {
  if (rays.size() < 2 || rays.front() != LatticePoint{1, 0} || rays.back() != LatticePoint{0, 1})
    throw Error("a fan of the quadrant runs from e1 to e2");
  for (const auto& r : rays)
    if (r[0] < 0 || r[1] < 0 || std::gcd(r[0], r[1]) != 1) throw Error("fan rays must be primitive vectors in the quadrant");
  for (std::size_t i = 0; i + 1 < rays.size(); ++i)
    if (determinant(rays[i], rays[i + 1]) < 1) throw Error("fan rays must have strictly increasing slope");
  return Fan2D{std::move(rays)};
}

std::string to_string(BlowupKind kind) { return kind == BlowupKind::Weighted ? "weighted" : "multiweighted"; }

std::optional<std::string> Blowup::u() const {
  if (target_variables.size() < 4) return std::nullopt;
  return target_variables[3];
}

MPoly Blowup::pullback(const MPoly& f) const {
  std::vector<MPoly> images;
  for (const auto& name : f.variables()) {
    auto it = std::find(source_variables.begin(), source_variables.end(), name);
    if (it == source_variables.end()) throw Error("variable " + name + " is not a blow-up coordinate");
    images.push_back(transform[it - source_variables.begin()]);
  }
  return f.substitute(images);
}

Blowup weighted_blowup(const ReducedCenter& rc, const std::vector<std::string>& variables, Field field) {
  check_reduced(rc);
  if (variables.size() != 2) throw Error("blow-ups act on two variables");
  const unsigned p = field.characteristic();
  Blowup b;
  b.kind = BlowupKind::Weighted;
  b.field = field;
  b.w1 = rc.w1;
  b.w2 = rc.w2;
  b.source_variables = variables;
  const std::string x1 = primed(variables[0]), x2 = primed(variables[1]), s = "s";
  b.target_variables = {x1, x2, s};
  b.transform = {monomial_in(field, b.target_variables, {1, 0, b.w1}), monomial_in(field, b.target_variables, {0, 1, b.w2})};
  const LatticePoint e1{1, 0}, e2{0, 1}, w{b.w1, b.w2};
  b.fan = make_fan({e1, w, e2});
  // G_m acts by (x1', x2', s) -> (t^{w1} x1', t^{w2} x2', t^{-1} s).
  b.charts.push_back(make_chart(BlowupKind::Weighted, {w, e2}, {x1}, {x2, s}, {b.w2, -1}, {s}, p));
  b.charts.push_back(make_chart(BlowupKind::Weighted, {e1, w}, {x2}, {x1, s}, {b.w1, -1}, {s}, p));
  for (std::size_t i = 0; i < b.charts.size(); ++i)
    if (b.charts[i].deligne_mumford) b.processing_order.push_back(i);
  for (std::size_t i = 0; i < b.charts.size(); ++i)
    if (!b.charts[i].deligne_mumford) b.processing_order.push_back(i);
  b.deligne_mumford = p == 0 || (b.w1 * b.w2) % p != 0;
  return b;
}

Fan2D multiweighted_fan(const ReducedCenter& rc, unsigned p) {
  check_reduced(rc);
  if (p == 0 || (rc.w1 * rc.w2) % p != 0) throw Error("the multi-weighted blow-up needs p > 0 dividing w1*w2");
  std::int64_t w1 = rc.w1, w2 = rc.w2;
  if (w1 % p != 0) std::swap(w1, w2);
  const std::int64_t kappa = (w2 + w1 - 1) / w1;
  Fan2D fan = make_fan({{1, 0}, {w1, w2}, {1, kappa}, {0, 1}});
  for (std::int64_t d : fan.determinants())
    if (d % p == 0) throw Error("multi-weighted fan has a determinant divisible by p");
  return fan;
}

Blowup multiweighted_blowup(const ReducedCenter& rc, const std::vector<std::string>& variables, Field field) {
  if (variables.size() != 2) throw Error("blow-ups act on two variables");
  const unsigned p = field.characteristic();
  Fan2D fan = multiweighted_fan(rc, p);
  Blowup b;
  b.kind = BlowupKind::Multiweighted;
  b.field = field;
  b.swapped = rc.w1 % p != 0;
  b.source_variables = variables;
  if (b.swapped) std::swap(b.source_variables[0], b.source_variables[1]);
  b.w1 = fan.rays[1][0];
  b.w2 = fan.rays[1][1];
  b.kappa = fan.rays[2][1];
  b.fan = fan;
  const std::string x1 = primed(b.source_variables[0]), x2 = primed(b.source_variables[1]), s = "s", u = "u";
  b.target_variables = {x1, x2, s, u};
  b.transform = {monomial_in(field, b.target_variables, {1, 0, b.w1, 1}),
                 monomial_in(field, b.target_variables, {0, 1, b.w2, b.kappa})};
  // G_m^2 acts by (t1^{w1} t2 x1', t1^{w2} t2^kappa x2', t1^{-1} s, t2^{-1} u).
  const auto cones = fan.cones();
  b.charts.push_back(make_chart(BlowupKind::Multiweighted, cones[0], {x2, u}, {x1, s}, {b.w1, -1}, {s}, p));
  b.charts.push_back(make_chart(BlowupKind::Multiweighted, cones[1], {x1, x2}, {s, u}, {-1, b.w1}, {s, u}, p));
  b.charts.push_back(make_chart(BlowupKind::Multiweighted, cones[2], {x1, s}, {x2, u}, {0, 0}, {u}, p));
  b.processing_order = {0, 2, 1};
  b.deligne_mumford = true;
  return b;
}

ProperTransform proper_transform(const MPoly& f, const Blowup& b) {
  if (f.is_zero()) throw Error("proper transform of the zero polynomial");
  std::vector<std::string> exceptional = {b.s()};
  if (b.u()) exceptional.push_back(*b.u());
  auto divided = divide_out_variables(b.pullback(f), exceptional);
  ProperTransform pt{divided.quotient, divided.exponents[0], std::nullopt};
  if (b.u()) pt.beta = divided.exponents[1];
  return pt;
}

MPoly recompose_at_unit(const ProperTransform& pt, const Blowup& b) {
  const Field field = b.field;
  std::vector<MPoly> images;
  for (const auto& name : b.target_variables) {
    if (name == b.s() || name == b.u()) {
      images.push_back(MPoly::constant(field, b.source_variables, field.one()));
      continue;
    }
    const std::string base = name.substr(0, name.size() - 1);
    auto it = std::find(b.source_variables.begin(), b.source_variables.end(), base);
    images.push_back(MPoly::variable(field, b.source_variables, it - b.source_variables.begin()));
  }
  return pt.f_prime.substitute(images);
}

MPoly chart_restriction(const ProperTransform& pt, const Blowup& b, const BlowupChart& chart) {
  const Field field = b.field;
  const std::vector<std::string> slice(chart.slice.begin(), chart.slice.end());
  std::vector<MPoly> images;
  for (const auto& name : pt.f_prime.variables()) {
    auto it = std::find(slice.begin(), slice.end(), name);
    if (it != slice.end())
      images.push_back(MPoly::variable(field, slice, it - slice.begin()));
    else
      images.push_back(MPoly::constant(field, slice, field.one()));
  }
  return pt.f_prime.substitute(images);
}

Fan2D dual_fan_check(const std::vector<LatticePoint>& generators) {
  if (generators.empty()) throw Error("dual fan of an empty generator list");
  std::vector<LatticePoint> rays = {{1, 0}};
  for (const auto& edge : newton_polygon(generators).edges) rays.push_back(edge.normal);
  rays.push_back({0, 1});
  return make_fan(std::move(rays));
}

std::vector<Exponents> controlled_transform(const std::vector<LatticePoint>& generators, const Blowup& b) {
  std::vector<Exponents> out;
  for (const auto& [a, c] : generators) {
    Exponents e{};
    e[0] = static_cast<std::uint32_t>(a);
    e[1] = static_cast<std::uint32_t>(c);
    e[2] = static_cast<std::uint32_t>(a * b.w1 + c * b.w2);
    if (b.u()) e[3] = static_cast<std::uint32_t>(a + c * b.kappa);
    out.push_back(e);
  }
  for (std::size_t k = 2; k < b.target_variables.size(); ++k) {
    std::uint32_t m = out.front()[k];
    for (const auto& e : out) m = std::min(m, e[k]);
    for (auto& e : out) e[k] -= m;
  }
  return out;
}

std::vector<Exponents> monomial_radical(const std::vector<Exponents>& generators, std::size_t nvars) {
  std::vector<Exponents> support;
  for (const auto& g : generators) {
    Exponents e{};
    for (std::size_t i = 0; i < nvars; ++i) e[i] = g[i] > 0 ? 1 : 0;
    support.push_back(e);
  }
  auto divides = [&](const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < nvars; ++i)
      if (a[i] > b[i]) return false;
    return true;
  };
  std::vector<Exponents> out;
  for (std::size_t i = 0; i < support.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < support.size() && minimal; ++j)
      if (support[j] != support[i] && divides(support[j], support[i])) minimal = false;
    if (minimal && std::find(out.begin(), out.end(), support[i]) == out.end()) out.push_back(support[i]);
  }
  std::sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) { return graded_lex_greater(a, b); });
  return out;
}

}  // namespace stackres
