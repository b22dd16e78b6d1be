#include "stackres/export.hpp"

namespace stackres {

using nlohmann::json;

namespace {

json ray(const LatticePoint& p) { return json::array({p[0], p[1]}); }

json point_json(const PointRecord& p) {
  json coords = json::array();
  for (const auto& c : p.coordinates) coords.push_back(c ? json(c->to_string()) : json(nullptr));
  json out = {{"divisor", p.divisor},     {"coordinates", coords},      {"field", p.field},
              {"multiplicity", p.multiplicity}, {"orbit_size", p.orbit_size}, {"description", p.description}};
  out["minimal_polynomial"] = p.minimal_polynomial ? json(p.minimal_polynomial->to_string("t")) : json(nullptr);
  return out;
}

json chart_json(const ChartResult& c) {
  const BlowupChart& ch = c.chart;
  json restrictions = json::array();
  for (const auto& r : c.restrictions)
    restrictions.push_back({{"divisor", r.divisor}, {"polynomial", r.restriction.to_string("t")}, {"max_multiplicity", r.max_multiplicity}});
  json points = json::array();
  for (const auto& p : c.points) points.push_back(point_json(p));
  return {{"label", ch.label},
          {"cone", json::array({ray(ch.cone.first), ray(ch.cone.second)})},
          {"inverted", ch.inverted},
          {"slice", json::array({ch.slice[0], ch.slice[1]})},
          {"stabilizer_order", ch.stabilizer_order},
          {"stabilizer_weights", json::array({ch.stabilizer_weights[0], ch.stabilizer_weights[1]})},
          {"deligne_mumford", ch.deligne_mumford},
          {"exceptional", ch.exceptional},
          {"equation", c.equation.to_string()},
          {"explored", c.explored},
          {"restrictions", restrictions},
          {"points", points},
          {"point_orders", c.point_orders},
          {"origin_order", c.origin_order ? json(*c.origin_order) : json(nullptr)},
          {"order_bound", c.order_bound},
          {"children", c.children},
          {"note", c.note}};
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("tree document lacks '") + key + "'");
  return j.at(key);
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw Error("malformed rational '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace

json to_json(const CenterAnalysis& a) {
  const auto& cp = a.polyhedron;
  const auto& frame = cp.frame;
  json steps = json::array();
  for (const auto& s : frame.steps) steps.push_back(frame.describe(s));
  json chain = json::array();
  for (const auto& r : cp.chain) chain.push_back({{"vertex", r.vertex.get_str()}, {"lambda", r.lambda.to_string()}});
  json exponents = json::object();
  for (std::size_t i = 0; i < 2; ++i) exponents[frame.variables[i]] = a.center.exponents[i].get_str();
  return {{"invariant", json::array({a.invariant.nu, a.invariant.a2().get_str()})},
          {"delta", cp.delta.get_str()},
          {"z", frame.variables[frame.z_index]},
          {"x", frame.variables[frame.x_index()]},
          {"unit", frame.unit.to_string()},
          {"frame", steps},
          {"working", cp.working.to_string()},
          {"pure_power_initial", cp.pure_power_initial},
          {"F_nu", cp.F_nu.to_string()},
          {"F_delta", cp.F_delta.to_string()},
          {"solving_chain", chain},
          {"center_exponents", exponents},
          {"weights", json::array({a.reduced.w1, a.reduced.w2})},
          {"ell", a.reduced.ell}};
}

json to_json(const Blowup& b) {
  json fan = json::array();
  for (const auto& r : b.fan.rays) fan.push_back(ray(r));
  json out = {{"kind", to_string(b.kind)},
              {"weights", json::array({b.w1, b.w2})},
              {"swapped", b.swapped},
              {"source_variables", b.source_variables},
              {"target_variables", b.target_variables},
              {"transform", json::array({b.transform[0].to_string(), b.transform[1].to_string()})},
              {"fan", fan},
              {"determinants", b.fan.determinants()},
              {"processing_order", b.processing_order},
              {"deligne_mumford", b.deligne_mumford}};
  if (b.kind == BlowupKind::Multiweighted) out["kappa"] = b.kappa;
  return out;
}

json to_json(const VerificationEntry& e) {
  return {{"node", e.node}, {"check", e.check}, {"passed", e.passed}, {"detail", e.detail}};
}

json to_json(const ResolutionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    json j = {{"id", n.id},
              {"parent", n.parent},
              {"parent_chart", n.parent_chart},
              {"depth", n.depth},
              {"path", n.path},
              {"field", n.field.spec()},
              {"variables", n.equation.variables()},
              {"equation", n.equation.to_string()},
              {"order", n.order},
              {"status", to_string(n.status)}};
    j["point"] = n.point ? point_json(*n.point) : json(nullptr);
    if (n.embedding)
      j["embedding"] = {{"from", n.embedding->source().spec()}, {"generator_image", n.embedding->generator_image().to_string()}};
    j["invariant"] = n.analysis ? json::array({n.analysis->invariant.nu, n.analysis->invariant.a2().get_str()}) : json(nullptr);
    j["center"] = n.analysis ? to_json(*n.analysis) : json(nullptr);
    j["blowup"] = n.blowup ? to_json(*n.blowup) : json(nullptr);
    if (n.transform) {
      j["proper_transform"] = {{"f_prime", n.transform->f_prime.to_string()}, {"alpha", n.transform->alpha}};
      j["proper_transform"]["beta"] = n.transform->beta ? json(*n.transform->beta) : json(nullptr);
    } else {
      j["proper_transform"] = nullptr;
    }
    json charts = json::array();
    for (const auto& c : n.charts) charts.push_back(chart_json(c));
    j["charts"] = charts;
    nodes.push_back(std::move(j));
  }
  json log = json::array();
  for (const auto& e : tree.log) log.push_back(to_json(e));
  return {{"schema", kTreeSchema},
          {"input", {{"field", tree.input.field().spec()}, {"variables", tree.input.variables()}, {"poly", tree.input.to_string()}}},
          {"mode", to_string(tree.mode)},
          {"step_limit", tree.step_limit},
          {"nodes", nodes},
          {"verification", log},
          {"verified", tree.verified()}};
}

std::vector<NodeSummary> summaries_from_json(const json& tree) {
  if (require(tree, "schema") != kTreeSchema) throw Error("unsupported tree schema");
  std::vector<NodeSummary> out;
  try {
    for (const auto& n : require(tree, "nodes")) {
      NodeSummary s;
      s.id = require(n, "id").get<int>();
      s.parent = require(n, "parent").get<int>();
      s.depth = require(n, "depth").get<int>();
      s.order = require(n, "order").get<unsigned>();
      s.status = parse_status(require(n, "status").get<std::string>());
      const json& inv = require(n, "invariant");
      if (!inv.is_null()) {
        Invariant v;
        v.nu = inv.at(0).get<unsigned>();
        v.delta = parse_rational(inv.at(1).get<std::string>()) / Rational(v.nu);
        s.invariant = v;
      }
      for (const auto& c : require(n, "charts")) {
        ChartSummary cs;
        cs.label = require(c, "label").get<std::string>();
        cs.explored = require(c, "explored").get<bool>();
        cs.order_bound = require(c, "order_bound").get<unsigned>();
        cs.point_orders = require(c, "point_orders").get<std::vector<unsigned>>();
        const json& o = require(c, "origin_order");
        if (!o.is_null()) cs.origin_order = o.get<unsigned>();
        s.charts.push_back(std::move(cs));
      }
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed tree document: ") + e.what());
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].id != static_cast<int>(i) || out[i].parent >= static_cast<int>(i)) throw Error("tree nodes are not in breadth-first order");
  return out;
}

bool StoredVerification::all_passed() const {
  return std::all_of(recomputed.begin(), recomputed.end(), [](const VerificationEntry& e) { return e.passed; });
}

StoredVerification verify_json(const json& tree) {
  StoredVerification out;
  out.recomputed = verify_summaries(summaries_from_json(tree), require(tree, "step_limit").get<int>());
  try {
    for (const auto& e : require(tree, "verification"))
      out.stored.push_back({e.at("node").get<int>(), e.at("check").get<std::string>(), e.at("passed").get<bool>(),
                            e.at("detail").get<std::string>()});
  } catch (const json::exception& e) {
    throw Error(std::string("malformed verification log: ") + e.what());
  }
  return out;
}

}  // namespace stackres
