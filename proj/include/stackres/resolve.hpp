#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stackres/blowup.hpp"

namespace stackres {

enum class Mode { Auto, Weighted, Multiweighted };
std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

enum class NodeStatus { Active, SmoothReduced, PurePower, NonRationalLeaf };
std::string to_string(NodeStatus status);
NodeStatus parse_status(const std::string& text);

// A point on the exceptional locus of a chart, in slice coordinates.
struct PointRecord {
  std::string divisor;
  // Coordinates in the chart slice; for a non-rational point over Q the non-divisor
  // coordinate is a root of minimal_polynomial and left unset.
  std::array<std::optional<Scalar>, 2> coordinates;
  std::string field;
  // Multiplicity of the point as a root of the restriction to the divisor; bounds the order.
  unsigned multiplicity = 1;
  // Number of geometric points in the stabilizer orbit.
  std::int64_t orbit_size = 1;
  std::optional<UnivariatePoly> minimal_polynomial;
  std::string description;
};

struct RestrictionReport {
  std::string divisor;
  UnivariatePoly restriction;
  // Largest root multiplicity over the algebraic closure.
  unsigned max_multiplicity = 0;
};

struct ChartResult {
  BlowupChart chart;
  // The proper transform restricted to the chart slice.
  MPoly equation;
  bool explored = false;
  std::vector<RestrictionReport> restrictions;
  std::vector<PointRecord> points;
  std::vector<unsigned> point_orders;
  std::optional<unsigned> origin_order;
  std::vector<int> children;
  unsigned order_bound = 0;
  std::string note;
};

struct ResolutionNode {
  int id = 0;
  int parent = -1;
  int parent_chart = -1;
  int depth = 0;
  std::string path;
  Field field;
  MPoly equation;
  // Order at the origin; for a non-rational leaf, the multiplicity bound.
  unsigned order = 0;
  NodeStatus status = NodeStatus::SmoothReduced;
  std::optional<PointRecord> point;
  // Set when the node lives over an extension of the parent's field.
  std::optional<FieldEmbedding> embedding;
  std::optional<CenterAnalysis> analysis;
  std::optional<Blowup> blowup;
  std::optional<ProperTransform> transform;
  std::vector<ChartResult> charts;

  std::optional<Invariant> invariant() const;
};

struct VerificationEntry {
  int node = 0;
  std::string check;
  bool passed = true;
  std::string detail;
  friend bool operator==(const VerificationEntry&, const VerificationEntry&) = default;
};

struct ResolutionTree {
  MPoly input;
  Mode mode = Mode::Auto;
  int step_limit = 0;
  std::vector<ResolutionNode> nodes;
  std::vector<VerificationEntry> log;

  bool verified() const;
  int max_depth() const;
  // Number of blow-ups along the longest branch.
  int blowup_depth() const;
};

struct ResolveOptions {
  Mode mode = Mode::Auto;
  // Maximal branch depth; 0 means 10 times the order of the input.
  int step_limit = 0;
  std::uint64_t seed = 0;
};

// Resolves the singularity of f at the origin. Nodes of one depth are expanded in parallel;
// node ids follow breadth-first order.
ResolutionTree resolve(const MPoly& f, const ResolveOptions& options = {});
// Depth-first single-threaded reference producing the same tree.
ResolutionTree resolve_serial(const MPoly& f, const ResolveOptions& options = {});

// The root node alone: analysis, one blow-up and its charts with candidate points.
ResolutionNode blow_up_once(const MPoly& f, const ResolveOptions& options = {});

// Which blow-up a node with these weights gets.
BlowupKind choose_blowup(const ReducedCenter& rc, unsigned characteristic, Mode mode);

// The facts the drop checks need, recoverable from a tree or from its JSON form.
struct ChartSummary {
  std::string label;
  bool explored = false;
  unsigned order_bound = 0;
  std::vector<unsigned> point_orders;
  std::optional<unsigned> origin_order;
};

struct NodeSummary {
  int id = 0;
  int parent = -1;
  int depth = 0;
  unsigned order = 0;
  NodeStatus status = NodeStatus::SmoothReduced;
  std::optional<Invariant> invariant;
  std::vector<ChartSummary> charts;
};

std::vector<NodeSummary> summarize(const ResolutionTree& tree);
// Order drop, invariant drop, per-chart order bounds and the depth bound.
std::vector<VerificationEntry> verify_summaries(const std::vector<NodeSummary>& nodes, int step_limit);

}  // namespace stackres
