#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fedont/feature_model.hpp"
#include "fedont/ontology.hpp"
#include "fedont/terms.hpp"

namespace fedont {

/// Maps a feature model to a class ontology under the "products containing F"
/// interpretation:
///   - every child class is subsumed by its parent,
///   - a mandatory child is additionally a superclass of its parent,
///   - an alternative group adds DisjointClasses(members) and
///     parent <= union(members),
///   - an or group adds parent <= union(members),
///   - requires(a, b) becomes a <= b, excludes(a, b) becomes disjointness.
/// Classes are named "prefix:Feature" in canonical feature order.
Ontology fm_to_ontology(const FeatureModel& model, const std::string& prefix);

struct TermEntry {
  std::string raw;
  std::string normalized;
  /// Ancestor raw names from the root down to the parent (self excluded).
  std::vector<std::string> path;

  bool operator==(const TermEntry&) const = default;
};

struct TermTable {
  std::vector<TermEntry> entries;

  /// First entry (canonical order) whose normalized form equals `normalized`,
  /// or nullptr.
  const TermEntry* find(const std::string& normalized) const;

  bool operator==(const TermTable&) const = default;
};

/// One entry per feature in canonical order.
TermTable extract_terms(const FeatureModel& model, const SynonymTable& synonyms = {});

struct CommonTerm {
  /// Canonical key for the pair: the shared normalized form for exact
  /// matches, the lexicographically smaller of the two for fuzzy ones.
  std::string normalized;
  std::string raw_in_a;
  std::string raw_in_b;
  bool fuzzy = false;

  bool operator==(const CommonTerm&) const = default;
};

/// Exact matches on normalized names; with `fuzzy`, additionally pairs at
/// edit distance 1 that have no exact partner, each term used at most once,
/// candidate pairs taken in sorted order. Output sorted by normalized key.
std::vector<CommonTerm> common_terms(const TermTable& a, const TermTable& b, bool fuzzy);

struct AffinityGroup {
  std::string key;
  std::vector<std::string> members;  // sorted

  bool operator==(const AffinityGroup&) const = default;
};

struct AffinityResult {
  std::vector<AffinityGroup> groups;  // sorted by key
  std::vector<std::string> warnings;
};

/// Groups each common term under its nearest ancestor that is itself a common
/// term. Terms whose models disagree on that ancestor, or that have none, go
/// to the synthetic root group "shared"; disagreements are additionally
/// reported as warnings.
AffinityResult build_affinity(const std::vector<CommonTerm>& matches, const TermTable& a,
                              const TermTable& b);

enum class LinkKind { Subsumes, Equivalent };

struct FederationLink {
  std::string federation_class;  // qualified, e.g. "fed:Connectivity"
  std::string tool_id;
  std::string tool_class;  // qualified, e.g. "sym:Connectivity"
  LinkKind kind = LinkKind::Subsumes;

  bool operator==(const FederationLink&) const = default;
};

struct FederationManifest {
  std::string purpose;
  std::string scope;
  std::vector<std::string> tool_ids;

  bool operator==(const FederationManifest&) const = default;
};

struct FederationOptions {
  bool fuzzy = false;
  SynonymTable synonyms;
  /// Links become Equivalent instead of Subsumes when the raw names are
  /// identical across all supporting tools.
  bool equivalence_on_exact = false;
  std::string purpose;
  std::string scope;
};

struct FederationResult {
  Ontology federation{"fed"};
  std::map<std::string, Ontology> tools;       // tool_id -> ontology
  std::map<std::string, FeatureModel> models;  // tool_id -> source model
  std::vector<FederationLink> links;
  FederationManifest manifest;
  /// Build-time notices (affinity conflicts, low tool counts). Not persisted
  /// and excluded from structural equality.
  std::vector<std::string> warnings;
};

/// Structural equality over everything persisted (warnings excluded).
bool structurally_equal(const FederationResult& a, const FederationResult& b);

/// Builds the federation from >= 2 models with distinct tool ids: tool
/// ontologies via fm_to_ontology (prefix = tool id), one federation class per
/// term shared by >= 2 tools placed by the affinity rule, and one link per
/// (federation class, supporting tool).
FederationResult build_federation(
    const std::vector<std::pair<std::string, FeatureModel>>& models,
    const FederationOptions& options = {});

/// Adds a tool without rebuilding: existing federation classes and links are
/// preserved verbatim; the new tool's terms add links to matching classes and
/// spawn new classes for terms now shared by >= 2 tools. Matching is exact on
/// base-normalized names.
FederationResult extend_federation(const FederationResult& fed, const std::string& tool_id,
                                   const FeatureModel& model);

/// Removes a tool and its links; federation classes left with fewer than two
/// supporting links are dropped and their children re-parented to the root.
FederationResult remove_tool(const FederationResult& fed, const std::string& tool_id);

/// Single ontology combining the federation, every tool ontology, and the
/// links materialized as subclass/equivalence axioms. Useful for reasoning
/// across the whole federation.
Ontology merged_view(const FederationResult& fed);

}  // namespace fedont
