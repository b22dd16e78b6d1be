// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "stackres/export.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/tree_checks.hpp"

using namespace stackres;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed expectations; the first few end up in the report line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    if (failures_.empty()) return {true, summary + "; " + std::to_string(count_) + " checks"};
    std::string d = std::to_string(failures_.size()) + " of " + std::to_string(count_) + " checks failed: ";
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) d += (i ? "; " : "") + failures_[i];
    return {false, d};
  }

 private:
  int count_ = 0;
  std::vector<std::string> failures_;
};

Rational R(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

MPoly P(const std::string& text, Field field, std::vector<std::string> vars = {}) { return parse_polynomial(text, field, vars); }

const ChartResult* chart_named(const ResolutionNode& n, const std::string& label) {
  for (const auto& c : n.charts)
    if (c.chart.label == label) return &c;
  return nullptr;
}

const RestrictionReport* restriction_on(const ChartResult& c, const std::string& divisor) {
  for (const auto& r : c.restrictions)
    if (r.divisor == divisor) return &r;
  return nullptr;
}

std::vector<MPoly> fixture_inputs() {
  std::vector<MPoly> out;
  for (const auto& fx : fixtures::all()) out.push_back(fixtures::parse(fx));
  return out;
}

std::vector<MPoly> corpus_inputs() {
  std::vector<MPoly> out;
  for (const auto& e : treecheck::load_corpus(STACKRES_DATA_DIR "/random_corpus.txt")) out.push_back(treecheck::parse(e));
  return out;
}

Outcome tangent_solve() {
  Check c;
  const Field f3 = Field::prime(3);
  const MPoly f = P(fixtures::kTangentSolve, f3);
  const NormalizedForm n = normalize_initial_form(f);
  const std::size_t z = n.frame.z_index;
  c.expect(n.frame.variables[z] == "y", "tangent parameter is y");
  c.expect(projected_vertex(n.poly, z) == R(2), "first projected vertex 2");
  const auto lambda = is_solvable(n.poly, z, R(2));
  c.expect(lambda.has_value(), "vertex 2 solvable");
  // Oracle: substitute y -> y + x^2 by hand.
  const MPoly y = MPoly::variable(f3, f.variables(), f.index_of("y")), x = MPoly::variable(f3, f.variables(), f.index_of("x"));
  const MPoly solved = substitute(n.poly, {{"y", y + x.pow(2)}});
  c.expect(projected_vertex(solved, z) == R(11, 3), "vertex after y -> y + x^2 is 11/3");
  c.expect(!is_solvable(solved, z, R(11, 3)).has_value(), "vertex 11/3 not solvable");

  const CharacteristicPolyhedron cp = characteristic_polyhedron(f);
  c.expect(cp.delta == R(11, 3), "delta = 11/3");
  c.expect(cp.chain.size() == 2 && cp.chain[0].vertex == R(2) && cp.chain[1].vertex == R(11, 3), "solving chain 2, 11/3");
  c.expect(cp.frame.steps.size() == 1 && cp.frame.describe(cp.frame.steps[0]) == "y -> y + x^2", "recorded step y -> y + x^2");
  c.expect(cp.working == solved, "working polynomial equals the hand substitution");
  return c.outcome("vertex 2 solved by y -> y + x^2, then 11/3 unsolvable, delta = 11/3");
}

Outcome two_edges() {
  Check c;
  for (const char* spec : {"F2", "F3", "F5", "Q"}) {
    const Field field = Field::parse(spec);
    const MPoly f = P(fixtures::kTwoEdges, field);
    const CenterAnalysis a = compute_invariant_and_center(f);
    const std::string at = std::string(" over ") + spec;
    c.expect(a.polyhedron.delta == R(6, 5), "delta = 6/5" + at);
    c.expect(a.polyhedron.F_delta == P("z^7 - x^6*z^2", field, f.variables()), "F_delta = z^7 - x^6 z^2" + at);
    c.expect(a.invariant.nu == 7 && a.invariant.a2() == R(42, 5), "invariant (7, 42/5)" + at);
    c.expect(f.variables() == std::vector<std::string>{"z", "x"} && a.reduced.weights() == WeightVector{6, 5}, "weights (6, 5)" + at);
    c.expect(a.reduced.ell == 42, "ell = 42" + at);
  }
  return c.outcome("delta = 6/5, F_delta = z^7 - x^6*z^2, (7, 42/5), w = (6, 5), ell = 42 over F2, F3, F5, Q");
}

Outcome inseparable_weighted() {
  Check c;
  for (unsigned p : {2u, 3u}) {
    const Field fp = Field::prime(p);
    const std::string at = " for p = " + std::to_string(p);
    const ResolutionNode node = blow_up_once(P("x1^" + std::to_string(p) + " - x2^" + std::to_string(p + 1), fp), {Mode::Weighted});
    c.expect(node.blowup && node.blowup->kind == BlowupKind::Weighted, "weighted blow-up" + at);
    if (!node.blowup) continue;
    const ChartResult* first = chart_named(node, "x1' != 0");
    const ChartResult* second = chart_named(node, "x2' != 0");
    c.expect(first && second, "two charts" + at);
    if (!first || !second) continue;
    const MPoly expected = P("1 - x2'^" + std::to_string(p + 1), fp, {"x2'", "s"});
    c.expect(first->equation == expected, "chart x1' != 0 gives 1 - x2'^(p+1)" + at);
    c.expect(!first->equation.evaluate({fp.zero(), fp.zero()}).is_zero(), "misses s = x2' = 0" + at);
    // Smooth: h = 1 - t^(p+1) and h' share no root, and the equation does not involve s.
    const UnivariatePoly h = first->equation.to_univariate(0);
    c.expect(gcd(h, h.derivative()).degree() == 0 && first->equation.degree_in(1) == 0, "chart equation smooth" + at);
    c.expect(first->chart.stabilizer_order == p + 1 && second->chart.stabilizer_order == p, "stabilizer orders (p+1, p)" + at);
    c.expect(!node.blowup->deligne_mumford && !second->chart.deligne_mumford, "not Deligne-Mumford" + at);
  }
  return c.outcome("chart x1' != 0 is 1 - x2'^(p+1), smooth, off the fixed point; orders (p+1, p); not DM");
}

Outcome seven_order() {
  Check c;
  const Field f3 = Field::prime(3);
  const ResolutionTree tree = resolve(P(fixtures::kSevenOrder, f3));
  const ResolutionNode& root = tree.nodes.front();
  c.expect(root.transform.has_value(), "root blown up");
  if (!root.transform) return c.outcome("");
  c.expect(root.transform->f_prime ==
               P("x2'^7*u^3 + x1'^4*x2'^4*u + x1'^7*x2'^2*s + x1'^9*x2'*s^3 + x1'^11*s^5 + x1'^6*x2'^3*s^2*u", f3, {"x1'", "x2'", "s", "u"}),
           "proper transform");
  c.expect(root.transform->alpha == 28 && root.transform->beta == 11, "(alpha, beta) = (28, 11)");
  const ChartResult* cs = chart_named(root, "x1'*s != 0");
  const ChartResult* cu = chart_named(root, "x2'*u != 0");
  const ChartResult* cm = chart_named(root, "x1'*x2' != 0");
  c.expect(cs && cu && cm, "three charts");
  if (!cs || !cu || !cm) return c.outcome("");
  const RestrictionReport* rs = restriction_on(*cs, "u");
  const RestrictionReport* ru = restriction_on(*cu, "s");
  c.expect(rs && rs->restriction == UnivariatePoly::from_ints(f3, {1, 1, 1}), "x2'^2 + x2' + 1");
  c.expect(ru && ru->restriction == UnivariatePoly::from_ints(f3, {1, 0, 0, 0, 1}), "1 + x1'^4");
  c.expect(cm->equation == P("u^3 + u + s + s^3 + s^5 + s^2*u", f3, {"s", "u"}), "u^3 + u + s + s^3 + s^5 + s^2*u");
  auto bound = [](const ChartResult& r) {
    unsigned m = r.origin_order.value_or(0);
    for (const auto& p : r.points) m = std::max(m, p.multiplicity);
    return m;
  };
  const std::array<unsigned, 3> bounds = {bound(*cs), bound(*cu), bound(*cm)};
  c.expect(bounds == std::array<unsigned, 3>{2, 1, 1}, "point bounds (2, 1, 1)");
  for (const auto* r : {cs, cu, cm}) {
    c.expect(r->order_bound < 7, "restriction multiplicity below 7 on " + r->chart.label);
    for (unsigned o : r->point_orders) c.expect(o < 7, "point order below 7 on " + r->chart.label);
  }
  c.expect(tree.verified(), "tree verification");
  return c.outcome("f' and (28, 11) exact, three restrictions exact, bounds (2, 1, 1) < 7");
}

Outcome quartic_restriction() {
  Check c;
  const Field f3 = Field::prime(3);
  const ResolutionNode node = blow_up_once(P(fixtures::kSevenOrderQuartic, f3));
  const ChartResult* cu = chart_named(node, "x2'*u != 0");
  const RestrictionReport* r = cu ? restriction_on(*cu, "s") : nullptr;
  c.expect(r != nullptr, "restriction to s = 0 exists");
  if (!r) return c.outcome("");
  c.expect(r->restriction == UnivariatePoly::from_ints(f3, {1, 0, 0, 0, 1, 0, 0, 0, 1}), "gamma = 1 + x1'^4 + x1'^8");
  c.expect(r->max_multiplicity <= 2, "library multiplicity bound <= 2");
  // Oracle: divide out (t - a) repeatedly for every a in F9.
  const Field f9 = Field::parse("F9:t^2+1");
  const FieldEmbedding into(f3, f9, f9.zero());
  std::vector<Scalar> lifted;
  for (const auto& coef : r->restriction.coefficients()) lifted.push_back(into(coef));
  int total = 0;
  unsigned worst = 0;
  for (const Scalar& a : f9.elements()) {
    UnivariatePoly rest(f9, lifted);
    const UnivariatePoly linear(f9, {-a, f9.one()});
    unsigned mult = 0;
    while (rest.degree() >= 1 && (rest % linear).is_zero()) {
      rest = rest / linear;
      ++mult;
    }
    worst = std::max(worst, mult);
    total += static_cast<int>(mult);
  }
  c.expect(total == 8, "gamma splits over F9");
  c.expect(worst <= 2, "every root multiplicity <= 2");
  return c.outcome("gamma = 1 + x1'^4 + x1'^8, root multiplicities " + std::to_string(worst) + " at most");
}

Outcome fan_example() {
  Check c;
  const Fan2D fan = multiweighted_fan({3, 2, 6}, 3);
  c.expect(fan.rays == std::vector<LatticePoint>{{1, 0}, {3, 2}, {1, 1}, {0, 1}}, "rays e1, w, u = (1,1), e2");
  c.expect(fan.determinants() == std::vector<std::int64_t>{2, 1, 1}, "determinants (2, 1, 1)");
  for (auto d : fan.determinants()) c.expect(d % 3 != 0, "determinant prime to 3");
  return c.outcome("u = (1, 1), determinants (2, 1, 1), none divisible by 3");
}

Outcome order_drop() {
  Check c;
  std::vector<MPoly> inputs = fixture_inputs();
  const std::size_t fixtures = inputs.size();
  for (auto& f : corpus_inputs()) inputs.push_back(std::move(f));
  int edges = 0, invariant_edges = 0, deepest = 0;
  for (const auto& f : inputs) {
    const std::string tag = f.field().spec() + " " + f.to_string();
    try {
      const ResolutionTree tree = resolve(f);
      c.expect(tree.verified(), "verification log of " + tag);
      const unsigned nu0 = tree.nodes.front().order;
      c.expect(tree.blowup_depth() <= static_cast<int>(std::max(1u, nu0)), "depth within initial order for " + tag);
      deepest = std::max(deepest, tree.blowup_depth());
      for (const auto& n : tree.nodes) {
        if (n.parent < 0) continue;
        const auto& parent = tree.nodes[n.parent];
        ++edges;
        c.expect(n.order < parent.order, "order drop at node " + std::to_string(n.id) + " of " + tag);
        if (n.invariant() && parent.invariant()) {
          ++invariant_edges;
          c.expect(*n.invariant() < *parent.invariant(), "invariant drop at node " + std::to_string(n.id) + " of " + tag);
        }
      }
    } catch (const LimitExceeded& e) {
      c.expect(false, "step limit hit for " + tag);
    }
  }
  return c.outcome(std::to_string(fixtures) + " fixtures + " + std::to_string(inputs.size() - fixtures) + " random curves, " +
                   std::to_string(edges) + " edges (" + std::to_string(invariant_edges) + " with invariants), deepest branch " +
                   std::to_string(deepest) + " blow-ups");
}

Outcome invariance() {
  Check c;
  std::mt19937_64 rng(20240611);
  int runs = 0;
  for (const auto& fx : fixtures::all()) {
    const MPoly f = fixtures::parse(fx);
    Invariant expected;
    try {
      expected = compute_invariant_and_center(f).invariant;
    } catch (const PurePowerError&) {
      continue;
    }
    for (int k = 0; k < 200; ++k) {
      const MPoly g = f.substitute(testgen::random_triangular_automorphism(f.field(), f.variables(), rng, 2));
      ++runs;
      c.expect(compute_invariant_and_center(g).invariant == expected, fx.name + " changed under automorphism " + std::to_string(k));
    }
  }
  return c.outcome(std::to_string(runs) + " transformed fixtures keep (nu, nu*delta)");
}

Outcome maximality() {
  Check c;
  std::mt19937_64 rng(97);
  int fixtures_checked = 0;
  long candidates = 0;
  for (const auto& fx : fixtures::all()) {
    const MPoly f = fixtures::parse(fx);
    CenterAnalysis a;
    try {
      a = compute_invariant_and_center(f);
    } catch (const PurePowerError&) {
      continue;
    }
    const unsigned nu = a.invariant.nu;
    if (nu > 5) continue;
    ++fixtures_checked;
    const Rational a1(nu), a2 = a.invariant.a2();
    // The computed center itself is admissible in the solved coordinates.
    c.expect(is_admissible(a.center, a.polyhedron.working), fx.name + ": computed center admissible");

    std::set<Rational> values;
    for (unsigned d = 1; d <= nu; ++d)
      for (long n = 1; Rational(n, d) <= 2 * a2; ++n) values.insert(R(n, d));
    std::vector<MPoly> coordinates = {f, a.polyhedron.working};
    for (int k = 0; k < 12; ++k) {
      const MPoly& base = coordinates[k % 2];
      coordinates.push_back(base.substitute(testgen::random_triangular_automorphism(base.field(), base.variables(), rng, 2)));
    }
    for (const auto& g : coordinates)
      for (std::size_t i = 0; i < 2; ++i)
        for (const Rational& b1 : values) {
          if (b1 < a1) continue;
          for (const Rational& b2 : values) {
            if (b2 < b1 || !(b1 > a1 || b2 > a2)) continue;
            ++candidates;
            MonomialValuation v;
            v.values[i] = 1 / b1;
            v.values[1 - i] = 1 / b2;
            if (v(g) >= 1)
              c.expect(false, fx.name + ": admissible (" + b1.get_str() + ", " + b2.get_str() + ") exceeds (" + a1.get_str() + ", " +
                                  a2.get_str() + ")");
          }
        }
  }
  return c.outcome(std::to_string(fixtures_checked) + " fixtures with nu <= 5, " + std::to_string(candidates) +
                   " larger candidate centers, none admissible");
}

Outcome oracles() {
  Check c;
  for (std::int64_t w1 = 1; w1 <= 7; ++w1)
    for (std::int64_t w2 = 1; w2 <= 7; ++w2)
      for (std::int64_t r = 1; r <= 40; ++r)
        c.expect(valuation_ideal_generators({w1, w2, 1}, r) == oracle::enumerate_generators(w1, w2, r),
                 "generators for w = (" + std::to_string(w1) + ", " + std::to_string(w2) + "), r = " + std::to_string(r));
  const ReducedCenter w34{3, 4, 12};
  const auto closure = integral_closure_generators(w34, 3 * 4 + 4);
  c.expect(closure == std::vector<LatticePoint>{{6, 0}, {4, 1}, {0, 4}}, "I' generators x1^6, x1^4 x2, x2^4");
  c.expect(dual_fan_check(closure) == multiweighted_fan(w34, 3), "dual fan of I' equals the subdivided fan");

  int recomposed = 0;
  for (const auto& f : corpus_inputs()) {
    const ResolutionTree tree = resolve(f);
    for (const auto& n : tree.nodes) {
      if (!n.transform) continue;
      ++recomposed;
      c.expect(recompose_at_unit(*n.transform, *n.blowup) == n.analysis->polyhedron.working.in_ring(n.blowup->source_variables),
               "s = u = 1 recomposition at node " + std::to_string(n.id) + " of " + f.to_string());
    }
  }
  return c.outcome("generators match enumeration for w <= 7, r <= 40; I' and its dual fan; " + std::to_string(recomposed) +
                   " transforms recompose at s = u = 1");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tangent-solve vertex chain over F3", tangent_solve},
      {"two-edge curve invariants over F2, F3, F5, Q", two_edges},
      {"weighted blow-up of x1^p - x2^(p+1)", inseparable_weighted},
      {"seven-order curve over F3: transform and charts", seven_order},
      {"quartic variant: restriction multiplicities", quartic_restriction},
      {"multi-weighted fan for w = (3, 2), p = 3", fan_example},
      {"order and invariant drop on fixtures and random corpus", order_drop},
      {"invariant under random coordinate changes", invariance},
      {"maximality of the center", maximality},
      {"ideal generators, integral closure and transform identity", oracles},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << o.detail << ") [" << seconds << " s]";
    std::cout << line.str() << std::endl;
  }
  return failed ? 1 : 0;
}
