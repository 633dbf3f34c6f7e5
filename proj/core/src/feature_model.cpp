#include "fedont/feature_model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_set>

#include "fedont/terms.hpp"

namespace fedont {

bool Feature::operator==(const Feature& other) const {
  return name == other.name && solitary_children == other.solitary_children &&
         groups == other.groups;
}

bool FeatureModel::operator==(const FeatureModel& other) const {
  if (name != other.name || !(root == other.root)) return false;
  auto sorted = [](std::vector<CrossTreeConstraint> constraints) {
    std::sort(constraints.begin(), constraints.end(),
              [](const CrossTreeConstraint& a, const CrossTreeConstraint& b) {
                return std::tuple(static_cast<int>(a.kind), a.from, a.to) <
                       std::tuple(static_cast<int>(b.kind), b.from, b.to);
              });
    return constraints;
  };
  return sorted(constraints) == sorted(other.constraints);
}

namespace {

// Reserved words of the .fml grammar; a feature with one of these names could
// never survive a serialize/parse round trip.
const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "model",       "feature", "mandatory", "optional", "or",
      "alternative", "group",   "constraint", "requires", "excludes"};
  return words;
}

void walk(const Feature& feature, const std::function<void(const Feature&)>& visit) {
  visit(feature);
  for (const auto& child : feature.solitary_children) walk(child.feature, visit);
  for (const auto& group : feature.groups)
    for (const auto& member : group.members) walk(member, visit);
}

}  // namespace

std::vector<Diagnostic> validate(const FeatureModel& model) {
  std::vector<Diagnostic> diagnostics;
  auto error = [&](std::string message, std::string name) {
    diagnostics.push_back({Severity::Error, std::move(message), std::move(name)});
  };

  std::unordered_set<std::string> seen;
  std::unordered_set<std::string> seen_normalized;
  walk(model.root, [&](const Feature& feature) {
    if (feature.name.empty()) {
      error("feature with empty name", feature.name);
      return;
    }
    if (reserved_words().count(feature.name))
      error("feature name '" + feature.name + "' is a reserved word", feature.name);
    if (!seen.insert(feature.name).second)
      error("duplicate feature name '" + feature.name + "'", feature.name);
    else if (!seen_normalized.insert(normalize_term(feature.name)).second)
      error("feature name '" + feature.name +
                "' duplicates another feature under normalization",
            feature.name);
    for (const auto& group : feature.groups) {
      if (group.members.size() < 2)
        error("group under '" + feature.name + "' needs >= 2 members", feature.name);
    }
  });

  for (const auto& constraint : model.constraints) {
    if (!seen.count(constraint.from))
      error("constraint references unknown feature '" + constraint.from + "'",
            constraint.from);
    if (!seen.count(constraint.to))
      error("constraint references unknown feature '" + constraint.to + "'",
            constraint.to);
    if (constraint.from == constraint.to)
      error("constraint relates feature '" + constraint.from + "' to itself",
            constraint.from);
  }
  return diagnostics;
}

bool is_valid_model(const FeatureModel& model) {
  for (const auto& diagnostic : validate(model))
    if (diagnostic.severity == Severity::Error) return false;
  return true;
}

std::vector<std::string> canonical_feature_order(const FeatureModel& model) {
  std::vector<std::string> order;
  walk(model.root, [&](const Feature& feature) { order.push_back(feature.name); });
  return order;
}

IndexedModel::IndexedModel(const FeatureModel& model) {
  // Preorder indexing; parents are assigned as the tree is walked.
  std::function<void(const Feature&, int)> index_feature = [&](const Feature& feature,
                                                               int parent) {
    int self = static_cast<int>(names_.size());
    names_.push_back(feature.name);
    index_.emplace(feature.name, self);
    parents_.push_back(parent);
    solitary_.emplace_back();
    groups_of_.emplace_back();
    for (const auto& child : feature.solitary_children) {
      int child_index = static_cast<int>(names_.size());
      solitary_[self].emplace_back(child.kind, child_index);
      index_feature(child.feature, self);
    }
    for (const auto& group : feature.groups) {
      GroupInfo info;
      info.kind = group.kind;
      info.owner = self;
      for (const auto& member : group.members) {
        info.members.push_back(static_cast<int>(names_.size()));
        index_feature(member, self);
      }
      groups_of_[self].push_back(static_cast<int>(groups_.size()));
      groups_.push_back(std::move(info));
    }
  };
  index_feature(model.root, -1);

  for (const auto& constraint : model.constraints) {
    auto from = index_.find(constraint.from);
    auto to = index_.find(constraint.to);
    if (from == index_.end() || to == index_.end()) continue;  // validate() reports these
    constraints_.push_back({constraint.kind, from->second, to->second});
  }
}

int IndexedModel::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace fedont
