#include "fedont/analysis.hpp"

#include <algorithm>
#include <functional>

#include "fedont/errors.hpp"

namespace fedont {

namespace {

void require_valid(const FeatureModel& model) {
  if (!is_valid_model(model)) throw DomainError("invalid feature model '" + model.name + "'");
}

Formula exactly_one(const std::vector<Formula>& members) {
  std::vector<Formula> parts;
  parts.push_back(Formula::disjunction(members));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      parts.push_back(
          Formula::negation(Formula::conjunction({members[i], members[j]})));
  return Formula::conjunction(std::move(parts));
}

}  // namespace

Formula to_formula(const FeatureModel& model) {
  require_valid(model);
  std::vector<Formula> clauses;
  clauses.push_back(Formula::var(model.root.name));

  std::function<void(const Feature&)> visit = [&](const Feature& feature) {
    Formula parent = Formula::var(feature.name);
    for (const auto& child : feature.solitary_children) {
      Formula child_var = Formula::var(child.feature.name);
      if (child.kind == ChildKind::Mandatory)
        clauses.push_back(Formula::iff(parent, child_var));
      else
        clauses.push_back(Formula::implies(child_var, parent));
      visit(child.feature);
    }
    for (const auto& group : feature.groups) {
      std::vector<Formula> members;
      members.reserve(group.members.size());
      for (const auto& member : group.members) {
        members.push_back(Formula::var(member.name));
        clauses.push_back(Formula::implies(members.back(), parent));
      }
      if (group.kind == GroupKind::Alternative)
        clauses.push_back(Formula::implies(parent, exactly_one(members)));
      else
        clauses.push_back(Formula::implies(parent, Formula::disjunction(members)));
      for (const auto& member : group.members) visit(member);
    }
  };
  visit(model.root);

  for (const auto& constraint : model.constraints) {
    Formula from = Formula::var(constraint.from);
    Formula to = Formula::var(constraint.to);
    if (constraint.kind == ConstraintKind::Requires)
      clauses.push_back(Formula::implies(std::move(from), std::move(to)));
    else
      clauses.push_back(
          Formula::negation(Formula::conjunction({std::move(from), std::move(to)})));
  }
  return Formula::conjunction(std::move(clauses));
}

bool is_valid_configuration(const FeatureModel& model, const Configuration& config) {
  require_valid(model);
  IndexedModel index(model);

  std::vector<char> selected(index.feature_count(), 0);
  for (const auto& name : config.selected) {
    int feature = index.index_of(name);
    if (feature < 0) throw DomainError("unknown feature '" + name + "' in configuration");
    selected[feature] = 1;
  }

  // Root is always required; a product without it is no product.
  if (!selected[0]) return false;

  for (int feature = 1; feature < index.feature_count(); ++feature)
    if (selected[feature] && !selected[index.parent(feature)]) return false;

  for (int feature = 0; feature < index.feature_count(); ++feature) {
    if (!selected[feature]) continue;
    for (const auto& [kind, child] : index.solitary(feature))
      if (kind == ChildKind::Mandatory && !selected[child]) return false;
    for (int group_id : index.groups_of(feature)) {
      const auto& group = index.groups()[group_id];
      int chosen = 0;
      for (int member : group.members) chosen += selected[member] ? 1 : 0;
      if (group.kind == GroupKind::Alternative && chosen != 1) return false;
      if (group.kind == GroupKind::Or && chosen < 1) return false;
    }
  }

  for (const auto& constraint : index.constraints()) {
    if (constraint.kind == ConstraintKind::Requires) {
      if (selected[constraint.from] && !selected[constraint.to]) return false;
    } else {
      if (selected[constraint.from] && selected[constraint.to]) return false;
    }
  }
  return true;
}

namespace {

// Walks the tree of selection choices: a deselected feature silences its
// whole subtree; a selected feature forces mandatory children, branches on
// optional ones, picks one member of each alternative group and a non-empty
// member subset of each or group. Cross-tree constraints are checked on each
// complete selection. Enumeration stops early once `emit` returns false.
class ConfigGenerator {
 public:
  explicit ConfigGenerator(const IndexedModel& index) : index_(index) {}

  void run(const std::function<bool(const std::vector<char>&)>& emit) {
    emit_ = &emit;
    stop_ = false;
    selected_.assign(index_.feature_count(), 0);
    selected_[0] = 1;
    agenda_.assign(1, 0);
    expand(0);
  }

 private:
  void expand(std::size_t next) {
    if (stop_) return;
    if (next == agenda_.size()) {
      if (constraints_hold()) stop_ = !(*emit_)(selected_);
      return;
    }
    int feature = agenda_[next];
    choose_solitary(feature, 0, next);
  }

  void choose_solitary(int feature, std::size_t slot, std::size_t next) {
    if (stop_) return;
    const auto& children = index_.solitary(feature);
    if (slot == children.size()) {
      choose_group(feature, 0, next);
      return;
    }
    auto [kind, child] = children[slot];
    if (kind == ChildKind::Optional) {
      choose_solitary(feature, slot + 1, next);
      if (stop_) return;
    }
    selected_[child] = 1;
    agenda_.push_back(child);
    choose_solitary(feature, slot + 1, next);
    agenda_.pop_back();
    selected_[child] = 0;
  }

  void choose_group(int feature, std::size_t slot, std::size_t next) {
    if (stop_) return;
    const auto& groups = index_.groups_of(feature);
    if (slot == groups.size()) {
      expand(next + 1);
      return;
    }
    const auto& group = index_.groups()[groups[slot]];
    if (group.kind == GroupKind::Alternative) {
      for (int member : group.members) {
        selected_[member] = 1;
        agenda_.push_back(member);
        choose_group(feature, slot + 1, next);
        agenda_.pop_back();
        selected_[member] = 0;
        if (stop_) return;
      }
    } else {
      choose_or_subset(group.members, 0, false, feature, slot, next);
    }
  }

  void choose_or_subset(const std::vector<int>& members, std::size_t position,
                        bool any_chosen, int feature, std::size_t slot,
                        std::size_t next) {
    if (stop_) return;
    if (position == members.size()) {
      if (any_chosen) choose_group(feature, slot + 1, next);
      return;
    }
    choose_or_subset(members, position + 1, any_chosen, feature, slot, next);
    if (stop_) return;
    int member = members[position];
    selected_[member] = 1;
    agenda_.push_back(member);
    choose_or_subset(members, position + 1, true, feature, slot, next);
    agenda_.pop_back();
    selected_[member] = 0;
  }

  bool constraints_hold() const {
    for (const auto& constraint : index_.constraints()) {
      if (constraint.kind == ConstraintKind::Requires) {
        if (selected_[constraint.from] && !selected_[constraint.to]) return false;
      } else {
        if (selected_[constraint.from] && selected_[constraint.to]) return false;
      }
    }
    return true;
  }

  const IndexedModel& index_;
  const std::function<bool(const std::vector<char>&)>* emit_ = nullptr;
  std::vector<char> selected_;
  std::vector<int> agenda_;  // selected features whose children are undecided
  bool stop_ = false;
};

std::vector<std::vector<int>> all_config_index_sets(const IndexedModel& index) {
  std::vector<std::vector<int>> configs;
  ConfigGenerator generator(index);
  generator.run([&](const std::vector<char>& selected) {
    std::vector<int> indices;
    for (int i = 0; i < static_cast<int>(selected.size()); ++i)
      if (selected[i]) indices.push_back(i);
    configs.push_back(std::move(indices));
    return true;
  });
  std::sort(configs.begin(), configs.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return configs;
}

}  // namespace

EnumerationResult enumerate_configurations(const FeatureModel& model, std::uint64_t limit) {
  require_valid(model);
  if (limit == 0) throw DomainError("enumeration limit must be positive");
  IndexedModel index(model);

  auto configs = all_config_index_sets(index);
  EnumerationResult result;
  result.truncated = configs.size() > limit;
  std::size_t keep = result.truncated ? static_cast<std::size_t>(limit) : configs.size();
  result.configurations.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    Configuration config;
    for (int feature : configs[i]) config.selected.insert(index.names()[feature]);
    result.configurations.push_back(std::move(config));
  }
  return result;
}

std::uint64_t count_configurations(const FeatureModel& model, int feature_budget) {
  require_valid(model);
  IndexedModel index(model);
  if (index.feature_count() > feature_budget)
    throw DomainError("model has " + std::to_string(index.feature_count()) +
                      " features, above the exact-counting budget of " +
                      std::to_string(feature_budget));
  std::uint64_t count = 0;
  ConfigGenerator generator(index);
  generator.run([&](const std::vector<char>&) {
    ++count;
    return true;
  });
  return count;
}

std::set<std::string> dead_features(const FeatureModel& model) {
  require_valid(model);
  IndexedModel index(model);
  std::vector<char> ever_selected(index.feature_count(), 0);
  int missing = index.feature_count();

  ConfigGenerator generator(index);
  generator.run([&](const std::vector<char>& selected) {
    for (int i = 0; i < index.feature_count(); ++i) {
      if (selected[i] && !ever_selected[i]) {
        ever_selected[i] = 1;
        --missing;
      }
    }
    return missing > 0;  // every feature witnessed; no need to continue
  });

  std::set<std::string> dead;
  for (int i = 0; i < index.feature_count(); ++i)
    if (!ever_selected[i]) dead.insert(index.names()[i]);
  return dead;
}

std::set<std::string> core_features(const FeatureModel& model) {
  require_valid(model);
  IndexedModel index(model);
  std::vector<char> in_all(index.feature_count(), 1);
  bool any = false;

  ConfigGenerator generator(index);
  generator.run([&](const std::vector<char>& selected) {
    any = true;
    for (int i = 0; i < index.feature_count(); ++i)
      if (!selected[i]) in_all[i] = 0;
    return true;
  });
  if (!any) throw DomainError("no valid configurations");

  std::set<std::string> core;
  for (int i = 0; i < index.feature_count(); ++i)
    if (in_all[i]) core.insert(index.names()[i]);
  return core;
}

}  // namespace fedont
