#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace fedont {

enum class ChildKind { Mandatory, Optional };
enum class GroupKind { Alternative, Or };
enum class ConstraintKind { Requires, Excludes };

struct SolitaryChild;
struct FeatureGroup;

/// One node of the feature tree. A feature owns its solitary children and its
/// groups by value; source order is preserved in both lists and drives the
/// canonical serialization and every deterministic output derived from it.
struct Feature {
  std::string name;
  std::vector<SolitaryChild> solitary_children;
  std::vector<FeatureGroup> groups;

  bool operator==(const Feature&) const;
};

struct SolitaryChild {
  ChildKind kind;
  Feature feature;

  bool operator==(const SolitaryChild&) const = default;
};

struct FeatureGroup {
  GroupKind kind;
  std::vector<Feature> members;

  bool operator==(const FeatureGroup&) const = default;
};

/// Requires/Excludes between two features in different subtrees.
struct CrossTreeConstraint {
  ConstraintKind kind;
  std::string from;
  std::string to;

  bool operator==(const CrossTreeConstraint&) const = default;
};

struct FeatureModel {
  std::string name;
  Feature root;
  std::vector<CrossTreeConstraint> constraints;

  /// Structural equality; constraint order is not significant (the canonical
  /// printer sorts constraints).
  bool operator==(const FeatureModel& other) const;
};

/// A set of selected feature names, evaluated against a model.
struct Configuration {
  std::set<std::string> selected;

  bool operator==(const Configuration&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity;
  std::string message;
  std::string offending_name;

  bool operator==(const Diagnostic&) const = default;
};

/// Checks every structural invariant of the model: unique feature names
/// (raw and normalized), group arity >= 2, and constraints that name two
/// distinct existing features. Returns an empty list iff the model is valid.
std::vector<Diagnostic> validate(const FeatureModel& model);

/// True iff validate(model) reports no Error diagnostics.
bool is_valid_model(const FeatureModel& model);

/// Feature names in canonical order: preorder traversal of the tree, solitary
/// children before groups, source order within each list.
std::vector<std::string> canonical_feature_order(const FeatureModel& model);

/// Flattened, index-based view of a model used by the analyses. Feature
/// indices follow canonical_feature_order.
class IndexedModel {
 public:
  explicit IndexedModel(const FeatureModel& model);

  struct GroupInfo {
    GroupKind kind;
    int owner;
    std::vector<int> members;
  };
  struct ConstraintInfo {
    ConstraintKind kind;
    int from;
    int to;
  };

  int feature_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  /// -1 when the name is unknown.
  int index_of(const std::string& name) const;
  int parent(int feature) const { return parents_[feature]; }
  /// Solitary children of `feature` as (kind, child index), source order.
  const std::vector<std::pair<ChildKind, int>>& solitary(int feature) const {
    return solitary_[feature];
  }
  /// Indices into groups() of the groups owned by `feature`.
  const std::vector<int>& groups_of(int feature) const { return groups_of_[feature]; }
  const std::vector<GroupInfo>& groups() const { return groups_; }
  const std::vector<ConstraintInfo>& constraints() const { return constraints_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> parents_;
  std::vector<std::vector<std::pair<ChildKind, int>>> solitary_;
  std::vector<std::vector<int>> groups_of_;
  std::vector<GroupInfo> groups_;
  std::vector<ConstraintInfo> constraints_;
};

}  // namespace fedont
