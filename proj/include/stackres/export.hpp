#pragma once

#include <json.hpp>

#include "stackres/resolve.hpp"

namespace stackres {

inline constexpr const char* kTreeSchema = "stackres-tree/1";

// Resolution tree as JSON. Rationals are strings ("28/3"), polynomials are printed text.
nlohmann::json to_json(const ResolutionTree& tree);
nlohmann::json to_json(const CenterAnalysis& analysis);
nlohmann::json to_json(const Blowup& blowup);
nlohmann::json to_json(const VerificationEntry& entry);

std::vector<NodeSummary> summaries_from_json(const nlohmann::json& tree);

struct StoredVerification {
  std::vector<VerificationEntry> recomputed;
  std::vector<VerificationEntry> stored;
  bool all_passed() const;
  bool matches() const { return recomputed == stored; }
};

// Re-runs the drop checks on a stored tree. Throws Error on a malformed document.
StoredVerification verify_json(const nlohmann::json& tree);

}  // namespace stackres
