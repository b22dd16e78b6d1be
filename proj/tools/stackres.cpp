// Command-line front end: analyze a singularity, perform one blow-up, resolve, or re-verify
// a stored tree. Exit status 0 on success, 1 when a verification fails, 2 on bad input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "stackres/export.hpp"
#include "stackres/figures.hpp"
#include "stackres/parse.hpp"

namespace fs = std::filesystem;
using namespace stackres;

namespace {

struct RunConfig {
  std::string field = "Q";
  std::string poly;
  std::string vars;
  std::string mode = "auto";
  std::string json_path;
  std::string svg_dir;
  int step_limit = 0;
  std::uint64_t seed = 0;
  bool verbose = false;
  std::string input;  // stored tree for verify
};

class InputError : public Error {
  using Error::Error;
};

// Relative output paths land in $STACKRES_OUTPUT_DIR when it is set.
std::string output_path(const std::string& path) {
  const char* base = std::getenv("STACKRES_OUTPUT_DIR");
  if (!base || !*base || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(output_path(path));
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out || !(out << content)) throw Error("cannot write " + p.string());
}

MPoly read_input(const RunConfig& cfg) {
  if (cfg.poly.empty()) throw InputError("--poly is required");
  const Field field = Field::parse(cfg.field);
  const Mode mode = parse_mode(cfg.mode);
  if (mode == Mode::Multiweighted && field.is_rational())
    throw InputError("multiweighted mode needs a field of positive characteristic");
  std::vector<std::string> vars;
  if (!cfg.vars.empty()) vars = split_variable_list(cfg.vars);
  return parse_polynomial(cfg.poly, field, vars);
}

ResolveOptions options(const RunConfig& cfg) { return {parse_mode(cfg.mode), cfg.step_limit, cfg.seed}; }

void print_analysis(const CenterAnalysis& a, bool verbose) {
  const auto& cp = a.polyhedron;
  const auto& frame = cp.frame;
  std::cout << "working variables: z = " << frame.variables[frame.z_index] << ", x = " << frame.variables[frame.x_index()] << "\n";
  if (!frame.unit.is_one()) std::cout << "normalizing unit: " << frame.unit.to_string() << "\n";
  std::cout << "solving chain:\n";
  for (const auto& step : frame.steps) std::cout << "  " << frame.describe(step) << "\n";
  for (std::size_t i = 0; i < cp.chain.size(); ++i) {
    const bool last = i + 1 == cp.chain.size();
    std::cout << "  vertex " << cp.chain[i].vertex.get_str() << (last ? ": not solvable" : ": solved") << "\n";
  }
  std::cout << "delta = " << cp.delta.get_str() << "\n";
  std::cout << "invariant (nu, nu*delta) = (" << a.invariant.nu << ", " << a.invariant.a2().get_str() << ")\n";
  std::cout << "F_delta = " << cp.F_delta.to_string() << "\n";
  std::cout << "center: " << frame.variables[0] << "^" << a.center.exponents[0].get_str() << ", " << frame.variables[1] << "^"
            << a.center.exponents[1].get_str() << "\n";
  std::cout << "reduced weights (" << frame.variables[0] << ", " << frame.variables[1] << ") = (" << a.reduced.w1 << ", " << a.reduced.w2
            << "), ell = " << a.reduced.ell << "\n";
  if (verbose) std::cout << "working polynomial: " << cp.working.to_string() << "\n";
}

void print_node(const ResolutionNode& n, bool verbose) {
  std::cout << "node " << n.id << " depth " << n.depth << " [" << n.field.spec() << "] order " << n.order << " " << to_string(n.status);
  if (n.invariant()) std::cout << " invariant (" << n.invariant()->nu << ", " << n.invariant()->a2().get_str() << ")";
  std::cout << "\n  equation: " << n.equation.to_string() << "\n";
  if (n.point) std::cout << "  point: " << n.point->description << "\n";
  if (!n.blowup) return;
  const Blowup& b = *n.blowup;
  std::cout << "  blow-up: " << to_string(b.kind) << " w = (" << b.w1 << ", " << b.w2 << ")";
  if (b.kind == BlowupKind::Multiweighted) std::cout << " kappa = " << b.kappa << (b.swapped ? " (variables swapped)" : "");
  std::cout << "\n  proper transform: " << n.transform->f_prime.to_string() << "  (alpha = " << n.transform->alpha;
  if (n.transform->beta) std::cout << ", beta = " << *n.transform->beta;
  std::cout << ")\n";
  for (std::size_t slot : b.processing_order) {
    const ChartResult& c = n.charts[slot];
    std::cout << "  chart " << c.chart.label << ": mu_" << c.chart.stabilizer_order << (c.chart.deligne_mumford ? "" : " (not DM)") << "\n";
    if (!c.explored) {
      std::cout << "    " << c.note << "\n";
      continue;
    }
    std::cout << "    equation: " << c.equation.to_string() << "\n";
    for (const auto& r : c.restrictions)
      std::cout << "    on " << r.divisor << " = 0: " << r.restriction.to_string(c.chart.slice[r.divisor == c.chart.slice[0] ? 1 : 0])
                << " (max multiplicity " << r.max_multiplicity << ")\n";
    for (std::size_t i = 0; i < c.points.size(); ++i)
      if (verbose || c.point_orders[i] > 1)
        std::cout << "    point " << c.points[i].description << ": order " << c.point_orders[i] << "\n";
    if (!c.children.empty()) {
      std::cout << "    children:";
      for (int id : c.children) std::cout << " " << id;
      std::cout << "\n";
    }
  }
}

int print_log(const std::vector<VerificationEntry>& log, bool verbose) {
  int failures = 0;
  for (const auto& e : log) {
    if (!e.passed) ++failures;
    if (verbose || !e.passed) std::cout << (e.passed ? "  ok   " : "  FAIL ") << "node " << e.node << " " << e.check << ": " << e.detail << "\n";
  }
  std::cout << "verification: " << log.size() - failures << "/" << log.size() << " checks passed\n";
  return failures;
}

void write_manifest(const std::string& dir, const std::vector<std::string>& files) {
  write_file((fs::path(dir) / "manifest.json").string(), nlohmann::json(files).dump(2) + "\n");
}

int run_analyze(const RunConfig& cfg) {
  const MPoly f = read_input(cfg);
  std::cout << "polynomial: " << f.to_string() << " over " << f.field().spec() << "\n";
  const unsigned order = f.evaluate(std::vector<Scalar>(2, f.field().zero())).is_zero() ? order_at_origin(f) : 0;
  std::cout << "order at the origin: " << order << "\n";
  std::vector<std::string> figures;
  nlohmann::json doc = {{"schema", kTreeSchema}, {"poly", f.to_string()}, {"field", f.field().spec()}, {"order", order}};
  if (order <= 1) {
    std::cout << "smooth at the origin\n";
    doc["status"] = "smooth";
  } else {
    try {
      const CenterAnalysis a = compute_invariant_and_center(f);
      print_analysis(a, cfg.verbose);
      const auto kind = choose_blowup(a.reduced, f.field().characteristic(), parse_mode(cfg.mode));
      std::cout << "blow-up (" << cfg.mode << " mode): " << to_string(kind) << "\n";
      doc["status"] = "active";
      doc["center"] = to_json(a);
      if (!cfg.svg_dir.empty()) {
        write_file((fs::path(cfg.svg_dir) / "root-newton.svg").string(), newton_polygon_svg(a));
        figures.push_back("root-newton.svg");
      }
    } catch (const PurePowerError& e) {
      std::cout << "pure power: " << e.what() << "\n";
      doc["status"] = "pure-power";
    }
  }
  if (!cfg.svg_dir.empty()) write_manifest(cfg.svg_dir, figures);
  if (!cfg.json_path.empty()) write_file(cfg.json_path, doc.dump(2) + "\n");
  return 0;
}

int run_blowup(const RunConfig& cfg) {
  const MPoly f = read_input(cfg);
  const ResolutionNode node = blow_up_once(f, options(cfg));
  if (node.analysis) print_analysis(*node.analysis, cfg.verbose);
  print_node(node, true);
  int failures = 0;
  for (const auto& c : node.charts) {
    if (!c.explored) continue;
    bool ok = c.order_bound < node.order && c.origin_order.value_or(0) < node.order;
    for (unsigned o : c.point_orders) ok = ok && o < node.order;
    std::cout << (ok ? "  ok   " : "  FAIL ") << "chart " << c.chart.label << ": orders below " << node.order << "\n";
    failures += !ok;
  }
  ResolutionTree one;
  one.input = f;
  one.mode = parse_mode(cfg.mode);
  one.nodes = {node};
  std::vector<std::string> figures;
  if (!cfg.svg_dir.empty()) {
    figures = emit_figures(one, output_path(cfg.svg_dir));
    write_manifest(cfg.svg_dir, figures);
  }
  if (!cfg.json_path.empty()) {
    nlohmann::json doc = to_json(one);
    doc["nodes"][0]["charts_only"] = true;
    write_file(cfg.json_path, doc.dump(2) + "\n");
  }
  return failures ? 1 : 0;
}

int run_resolve(const RunConfig& cfg) {
  const MPoly f = read_input(cfg);
  const ResolutionTree tree = resolve(f, options(cfg));
  std::cout << "resolution of " << f.to_string() << " over " << f.field().spec() << " (" << to_string(tree.mode) << " mode)\n";
  for (const auto& n : tree.nodes) print_node(n, cfg.verbose);
  std::cout << "nodes: " << tree.nodes.size() << ", blow-ups along the longest branch: " << tree.blowup_depth() << "\n";
  const int failures = print_log(tree.log, cfg.verbose);
  if (!cfg.json_path.empty()) write_file(cfg.json_path, to_json(tree).dump(2) + "\n");
  if (!cfg.svg_dir.empty()) write_manifest(cfg.svg_dir, emit_figures(tree, output_path(cfg.svg_dir)));
  return failures ? 1 : 0;
}

int run_verify(const RunConfig& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw InputError("cannot read " + cfg.input);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("not a JSON document: ") + e.what());
  }
  const StoredVerification check = verify_json(doc);
  const int failures = print_log(check.recomputed, cfg.verbose);
  if (!check.matches()) std::cout << "stored verification log differs from the recomputed one\n";
  else std::cout << "stored verification log reproduced\n";
  return failures == 0 && check.matches() ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool with_tree) {
  cmd->add_option("--field", cfg.field, "Field: Q, F<p>, or F<q>:<modulus in t>")->capture_default_str();
  cmd->add_option("--poly", cfg.poly, "Polynomial in two variables")->required();
  cmd->add_option("--vars", cfg.vars, "Variable order, e.g. \"x,y\"");
  cmd->add_option("--mode", cfg.mode, "auto, weighted or multiweighted")->capture_default_str();
  cmd->add_option("--emit-json", cfg.json_path, "Write the result as JSON");
  cmd->add_option("--svg-dir", cfg.svg_dir, "Write SVG figures and manifest.json here");
  cmd->add_option("--seed", cfg.seed, "Seed for randomized factorization")->capture_default_str();
  if (with_tree) cmd->add_option("--step-limit", cfg.step_limit, "Maximal branch depth (0: ten times the order)");
  cmd->add_flag("-v,--verbose", cfg.verbose, "Print every point and check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution of plane curve singularities by weighted and multi-weighted blow-ups"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* analyze = app.add_subcommand("analyze", "Invariant, characteristic polyhedron and center at the origin");
  auto* blowup = app.add_subcommand("blowup", "One blow-up with all charts");
  auto* res = app.add_subcommand("resolve", "Full resolution tree");
  auto* verify = app.add_subcommand("verify", "Re-run the drop checks on a stored tree");
  add_common(analyze, cfg, false);
  add_common(blowup, cfg, false);
  add_common(res, cfg, true);
  verify->add_option("tree", cfg.input, "Tree JSON written by resolve --emit-json")->required();
  verify->add_flag("-v,--verbose", cfg.verbose, "Print every check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*analyze) return run_analyze(cfg);
    if (*blowup) return run_blowup(cfg);
    if (*res) return run_resolve(cfg);
    return run_verify(cfg);
  } catch (const LimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
