#include "stackres/resolve.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <numeric>

namespace stackres {

namespace {

std::uint64_t fnv1a(const std::string& text, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// A node waiting to be expanded.
struct Pending {
  int parent = -1;
  int parent_chart = -1;
  int depth = 0;
  std::string path;
  Field field;
  MPoly equation;
  std::optional<PointRecord> point;
  std::optional<FieldEmbedding> embedding;
  // Set for non-rational points over Q: the multiplicity bound replaces the order.
  std::optional<unsigned> leaf_bound;
};

struct Expansion {
  ResolutionNode node;
  // Children in chart processing order; chart_slot indexes node.charts.
  std::vector<std::pair<int, Pending>> children;
};

bool in_chart(const BlowupChart& chart, const std::vector<std::string>& zero) {
  for (const auto& v : chart.inverted)
    if (std::find(zero.begin(), zero.end(), v) != zero.end()) return false;
  return true;
}

// The point of the chart with the given slice coordinates zero lies in an earlier chart.
bool owned_elsewhere(const Blowup& b, std::size_t position, const std::vector<std::string>& zero) {
  for (std::size_t k = 0; k < position; ++k)
    if (b.charts[b.processing_order[k]].deligne_mumford && in_chart(b.charts[b.processing_order[k]], zero)) return true;
  return false;
}

unsigned max_multiplicity(const UnivariateFactorization& fac) {
  unsigned m = 0;
  for (const auto& f : fac.factors) m = std::max(m, f.multiplicity);
  return m;
}

// Writes h = t^a H(t^m); falls back to m = 1 when h is not of that shape.
std::pair<unsigned, UnivariatePoly> deflate(const UnivariatePoly& h, unsigned& m) {
  const auto& c = h.coefficients();
  unsigned a = 0;
  while (c[a].is_zero()) ++a;
  if (m > 1)
    for (std::size_t k = a; k < c.size(); ++k)
      if (!c[k].is_zero() && (k - a) % m != 0) {
        m = 1;
        break;
      }
  std::vector<Scalar> out;
  for (std::size_t k = a; k < c.size(); k += m) out.push_back(c[k]);
  return {a, UnivariatePoly(h.field(), std::move(out))};
}

std::string describe_point(const BlowupChart& chart, std::size_t e, std::size_t t, const std::string& value) {
  return chart.slice[e] + " = 0, " + chart.slice[t] + " = " + value;
}

struct Candidate {
  PointRecord record;
  std::optional<unsigned> leaf_bound;
  Field field;
  MPoly equation;
  std::optional<FieldEmbedding> embedding = std::nullopt;
};

void explore_chart(const ResolutionNode& node, const Blowup& b, std::size_t position, ChartResult& result,
                   std::vector<Candidate>& candidates, std::uint64_t seed) {
  const BlowupChart& chart = result.chart;
  const MPoly& g = result.equation;
  const Field field = node.field;
  if (!g.evaluate({field.zero(), field.zero()}).is_zero())
    result.origin_order = 0;
  else
    result.origin_order = order_at_origin(g);
  bool origin_seen = false;
  for (const auto& divisor : chart.exceptional) {
    const std::size_t e = divisor == chart.slice[0] ? 0 : 1, t = 1 - e;
    const UnivariatePoly h = g.evaluate_at(e, field.zero()).to_univariate(t);
    if (h.is_zero()) throw Error("proper transform contains the exceptional divisor " + divisor);
    const UnivariateFactorization full = factor_univariate(h, seed);
    result.restrictions.push_back({divisor, h, max_multiplicity(full)});
    result.order_bound = std::max(result.order_bound, max_multiplicity(full));

    const std::int64_t n = chart.stabilizer_order, wt = chart.stabilizer_weights[t];
    unsigned m = n > 1 && wt != 0 ? static_cast<unsigned>(n / std::gcd(n, std::abs(wt))) : 1;
    auto [a, H] = deflate(h, m);

    if (a > 0 && !origin_seen) {
      origin_seen = true;
      std::vector<std::string> zero = {chart.slice[0], chart.slice[1]};
      if (!owned_elsewhere(b, position, zero)) {
        PointRecord rec{divisor, {field.zero(), field.zero()}, field.spec(), a, 1, std::nullopt, describe_point(chart, e, t, "0")};
        if (a == 1) {
          result.points.push_back(rec);
          result.point_orders.push_back(1);
        } else {
          candidates.push_back({rec, std::nullopt, field, g});
        }
      }
    }
    if (H.degree() < 1) continue;
    std::vector<std::string> zero = {divisor};
    if (owned_elsewhere(b, position, zero)) continue;
    for (const auto& factor : factor_univariate(H, seed).factors) {
      PointRecord rec;
      rec.divisor = divisor;
      rec.multiplicity = factor.multiplicity;
      rec.orbit_size = m;
      rec.field = field.spec();
      const UnivariatePoly psi_source = factor.poly.inflate(m);
      if (factor.multiplicity == 1) {
        // A simple root of the restriction is a smooth point of the transform.
        rec.minimal_polynomial = psi_source;
        rec.description = describe_point(chart, e, t, "root of " + psi_source.to_string(chart.slice[t]));
        result.points.push_back(rec);
        result.point_orders.push_back(1);
        continue;
      }
      const auto pieces = factor_univariate(psi_source, seed).factors;
      const UnivariateFactor& psi = pieces.front();
      if (psi.poly.degree() == 1) {
        Scalar root = -psi.poly.coefficient(0);
        std::array<std::optional<Scalar>, 2> coords;
        coords[e] = field.zero();
        coords[t] = root;
        rec.coordinates = coords;
        rec.description = describe_point(chart, e, t, root.to_string());
        candidates.push_back({rec, std::nullopt, field, translate(g, e == 0 ? std::vector<Scalar>{field.zero(), root}
                                                                            : std::vector<Scalar>{root, field.zero()})});
      } else if (field.is_rational()) {
        rec.minimal_polynomial = psi.poly;
        std::array<std::optional<Scalar>, 2> coords;
        coords[e] = field.zero();
        rec.coordinates = coords;
        rec.description = describe_point(chart, e, t, "root of " + psi.poly.to_string(chart.slice[t]));
        candidates.push_back({rec, factor.multiplicity, field, g});
      } else {
        ExtensionResult ext = extend_field(field, psi.poly, seed);
        rec.minimal_polynomial = psi.poly;
        rec.field = ext.field.spec();
        std::array<std::optional<Scalar>, 2> coords;
        coords[e] = ext.field.zero();
        coords[t] = ext.root;
        rec.coordinates = coords;
        rec.description = describe_point(chart, e, t, ext.root.to_string() + " in " + ext.field.spec());
        MPoly lifted = g.map_coefficients(ext.embedding);
        candidates.push_back({rec, std::nullopt, ext.field,
                              translate(lifted, e == 0 ? std::vector<Scalar>{ext.field.zero(), ext.root}
                                                       : std::vector<Scalar>{ext.root, ext.field.zero()}),
                              ext.embedding});
      }
    }
  }
}

Expansion expand(const Pending& in, Mode mode, std::uint64_t seed) {
  Expansion out;
  ResolutionNode& node = out.node;
  node.parent = in.parent;
  node.parent_chart = in.parent_chart;
  node.depth = in.depth;
  node.path = in.path;
  node.field = in.field;
  node.equation = in.equation;
  node.point = in.point;
  node.embedding = in.embedding;
  const std::uint64_t node_seed = fnv1a(in.path, seed);
  if (in.leaf_bound) {
    node.status = NodeStatus::NonRationalLeaf;
    node.order = *in.leaf_bound;
    return out;
  }
  node.order = in.equation.evaluate({in.field.zero(), in.field.zero()}).is_zero() ? order_at_origin(in.equation) : 0;
  if (node.order <= 1) {
    node.status = NodeStatus::SmoothReduced;
    return out;
  }
  if (order_at_origin(radical(in.equation)) <= 1) {
    node.status = NodeStatus::PurePower;
    return out;
  }
  try {
    node.analysis = compute_invariant_and_center(in.equation);
  } catch (const PurePowerError&) {
    node.status = NodeStatus::PurePower;
    return out;
  }
  node.status = NodeStatus::Active;
  const CenterAnalysis& a = *node.analysis;
  const MPoly& working = a.polyhedron.working;
  const auto kind = choose_blowup(a.reduced, in.field.characteristic(), mode);
  node.blowup = kind == BlowupKind::Weighted ? weighted_blowup(a.reduced, working.variables(), in.field)
                                             : multiweighted_blowup(a.reduced, working.variables(), in.field);
  const Blowup& b = *node.blowup;
  node.transform = proper_transform(working, b);
  for (const auto& chart : b.charts) {
    ChartResult r;
    r.chart = chart;
    r.equation = chart_restriction(*node.transform, b, chart);
    node.charts.push_back(std::move(r));
  }
  for (std::size_t position = 0; position < b.processing_order.size(); ++position) {
    const std::size_t slot = b.processing_order[position];
    ChartResult& r = node.charts[slot];
    if (!r.chart.deligne_mumford) {
      r.note = "stabilizer order divisible by the characteristic: no etale slice, not explored";
      continue;
    }
    r.explored = true;
    std::vector<Candidate> candidates;
    explore_chart(node, b, position, r, candidates, node_seed);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      Candidate& c = candidates[k];
      r.points.push_back(c.record);
      r.point_orders.push_back(c.leaf_bound ? *c.leaf_bound : order_at_origin(c.equation));
      Pending child;
      child.parent_chart = static_cast<int>(slot);
      child.depth = in.depth + 1;
      child.path = in.path + "/" + std::to_string(slot) + "." + std::to_string(k);
      child.field = c.field;
      child.equation = c.equation;
      child.point = c.record;
      child.leaf_bound = c.leaf_bound;
      child.embedding = c.embedding;
      out.children.emplace_back(static_cast<int>(slot), std::move(child));
    }
  }
  return out;
}

Pending root_pending(const MPoly& f) {
  if (f.is_zero()) throw Error("the zero polynomial does not define a curve");
  if (f.nvars() != 2) throw Error("expected a polynomial in exactly two variables");
  Pending root;
  root.path = "0";
  root.field = f.field();
  root.equation = f;
  return root;
}

int effective_limit(const MPoly& f, const ResolveOptions& options) {
  if (options.step_limit > 0) return options.step_limit;
  return 10 * static_cast<int>(std::max(1u, order_at_origin(f)));
}

ResolutionTree finish(const MPoly& f, const ResolveOptions& options, int limit, std::vector<ResolutionNode> nodes) {
  ResolutionTree tree;
  tree.input = f;
  tree.mode = options.mode;
  tree.step_limit = limit;
  tree.nodes = std::move(nodes);
  tree.log = verify_summaries(summarize(tree), limit);
  return tree;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Auto: return "auto";
    case Mode::Weighted: return "weighted";
    case Mode::Multiweighted: return "multiweighted";
  }
  return "auto";
}

Mode parse_mode(const std::string& text) {
  if (text == "auto") return Mode::Auto;
  if (text == "weighted") return Mode::Weighted;
  if (text == "multiweighted") return Mode::Multiweighted;
  throw Error("unknown mode '" + text + "' (expected auto, weighted or multiweighted)");
}

std::string to_string(NodeStatus status) {
  switch (status) {
    case NodeStatus::Active: return "active";
    case NodeStatus::SmoothReduced: return "smooth";
    case NodeStatus::PurePower: return "pure-power";
    case NodeStatus::NonRationalLeaf: return "non-rational";
  }
  return "smooth";
}

NodeStatus parse_status(const std::string& text) {
  for (NodeStatus s : {NodeStatus::Active, NodeStatus::SmoothReduced, NodeStatus::PurePower, NodeStatus::NonRationalLeaf})
    if (to_string(s) == text) return s;
  throw Error("unknown node status '" + text + "'");
}

std::optional<Invariant> ResolutionNode::invariant() const {
  if (!analysis) return std::nullopt;
  return analysis->invariant;
}

bool ResolutionTree::verified() const {
  return std::all_of(log.begin(), log.end(), [](const VerificationEntry& e) { return e.passed; });
}

int ResolutionTree::max_depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

int ResolutionTree::blowup_depth() const {
  int d = 0;
  for (const auto& n : nodes)
    if (n.status == NodeStatus::Active) d = std::max(d, n.depth + 1);
  return d;
}

BlowupKind choose_blowup(const ReducedCenter& rc, unsigned p, Mode mode) {
  const bool inseparable = p != 0 && (rc.w1 * rc.w2) % p == 0;
  if (mode == Mode::Weighted || !inseparable) return BlowupKind::Weighted;
  return BlowupKind::Multiweighted;
}

ResolutionNode blow_up_once(const MPoly& f, const ResolveOptions& options) {
  Expansion e = expand(root_pending(f), options.mode, options.seed);
  for (std::size_t k = 0; k < e.children.size(); ++k) e.node.charts[e.children[k].first].children.push_back(static_cast<int>(k) + 1);
  return std::move(e.node);
}

ResolutionTree resolve(const MPoly& f, const ResolveOptions& options) {
  const int limit = effective_limit(f, options);
  std::vector<ResolutionNode> nodes;
  std::vector<Pending> level = {root_pending(f)};
  while (!level.empty()) {
    if (level.front().depth > limit) throw LimitExceeded("resolution exceeded the step limit of " + std::to_string(limit));
    std::vector<Expansion> expanded(level.size());
    std::vector<std::exception_ptr> errors(level.size());
    const long count = static_cast<long>(level.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
      try {
        expanded[i] = expand(level[i], options.mode, options.seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    const int base = static_cast<int>(nodes.size());
    int next = base + static_cast<int>(level.size());
    std::vector<Pending> following;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
      ResolutionNode node = std::move(expanded[i].node);
      node.id = base + static_cast<int>(i);
      for (auto& [slot, child] : expanded[i].children) {
        node.charts[slot].children.push_back(next++);
        child.parent = node.id;
        following.push_back(std::move(child));
      }
      nodes.push_back(std::move(node));
    }
    level = std::move(following);
  }
  return finish(f, options, limit, std::move(nodes));
}

ResolutionTree resolve_serial(const MPoly& f, const ResolveOptions& options) {
  const int limit = effective_limit(f, options);
  // Depth-first expansion into a nested structure, then breadth-first numbering.
  struct Tree {
    ResolutionNode node;
    std::vector<std::pair<int, Tree>> children;
  };
  std::function<Tree(const Pending&)> grow = [&](const Pending& p) {
    if (p.depth > limit) throw LimitExceeded("resolution exceeded the step limit of " + std::to_string(limit));
    Expansion e = expand(p, options.mode, options.seed);
    Tree t{std::move(e.node), {}};
    for (auto& [slot, child] : e.children) t.children.emplace_back(slot, grow(child));
    return t;
  };
  Tree root = grow(root_pending(f));
  std::vector<ResolutionNode> nodes;
  std::vector<std::pair<Tree*, int>> queue = {{&root, -1}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [t, parent] = queue[head];
    ResolutionNode node = t->node;
    node.id = static_cast<int>(head);
    node.parent = parent;
    for (auto& [slot, child] : t->children) {
      node.charts[slot].children.push_back(static_cast<int>(queue.size()));
      queue.emplace_back(&child, node.id);
    }
    nodes.push_back(std::move(node));
  }
  return finish(f, options, limit, std::move(nodes));
}

std::vector<NodeSummary> summarize(const ResolutionTree& tree) {
  std::vector<NodeSummary> out;
  for (const auto& n : tree.nodes) {
    NodeSummary s{n.id, n.parent, n.depth, n.order, n.status, n.invariant(), {}};
    for (const auto& c : n.charts) s.charts.push_back({c.chart.label, c.explored, c.order_bound, c.point_orders, c.origin_order});
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<VerificationEntry> verify_summaries(const std::vector<NodeSummary>& nodes, int step_limit) {
  std::vector<VerificationEntry> log;
  const unsigned root_order = nodes.empty() ? 0 : nodes.front().order;
  for (const auto& n : nodes) {
    if (n.parent >= 0) {
      const NodeSummary& parent = nodes.at(n.parent);
      log.push_back({n.id, "order-drop", n.order < parent.order,
                     "order " + std::to_string(n.order) + " below parent order " + std::to_string(parent.order)});
      if (n.invariant && parent.invariant)
        log.push_back({n.id, "invariant-drop", *n.invariant < *parent.invariant,
                       n.invariant->to_string() + " below " + parent.invariant->to_string()});
    }
    // Blow-ups performed along the branch down to and including this node.
    const int steps = n.depth + (n.status == NodeStatus::Active ? 1 : 0);
    // The step limit bounds the node depth, which is what resolution enforces.
    const bool depth_ok = steps <= std::max<int>(static_cast<int>(root_order), 1) && n.depth <= step_limit;
    log.push_back({n.id, "depth", depth_ok,
                   std::to_string(steps) + " blow-ups within initial order " + std::to_string(root_order) + ", depth " +
                       std::to_string(n.depth) + " within step limit " + std::to_string(step_limit)});
    for (const auto& c : n.charts) {
      if (!c.explored) {
        log.push_back({n.id, "chart " + c.label, true, "not explored"});
        continue;
      }
      bool ok = c.order_bound < n.order && (!c.origin_order || *c.origin_order < n.order);
      for (unsigned o : c.point_orders) ok = ok && o < n.order;
      std::string detail = "restriction multiplicity " + std::to_string(c.order_bound);
      if (c.origin_order) detail += ", origin order " + std::to_string(*c.origin_order);
      detail += ", point orders [";
      for (std::size_t i = 0; i < c.point_orders.size(); ++i) detail += (i ? "," : "") + std::to_string(c.point_orders[i]);
      detail += "] below " + std::to_string(n.order);
      log.push_back({n.id, "chart " + c.label, ok, detail});
    }
  }
  return log;
}

}  // namespace stackres
