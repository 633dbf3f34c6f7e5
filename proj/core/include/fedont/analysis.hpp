#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fedont/feature_model.hpp"
#include "fedont/formula.hpp"

namespace fedont {

/// Propositional encoding of the model's configuration semantics. Satisfying
/// assignments are exactly the valid configurations:
///   - the root is asserted true,
///   - every child implies its parent,
///   - a mandatory child is biconditional with its parent,
///   - an alternative group forces exactly one member when the parent holds,
///   - an or group forces at least one member when the parent holds,
///   - requires(a, b) becomes a -> b, excludes(a, b) becomes !(a & b).
/// Rejects invalid models.
Formula to_formula(const FeatureModel& model);

/// Rule-based validity check, implemented directly from the relation rules
/// (not via to_formula) so the two act as mutual oracles. Unknown feature
/// names in the configuration raise DomainError.
bool is_valid_configuration(const FeatureModel& model, const Configuration& config);

struct EnumerationResult {
  std::vector<Configuration> configurations;
  bool truncated = false;
};

/// All valid configurations (up to `limit`, which must be positive), ordered
/// by (size, then lexicographic over the model's canonical feature order).
EnumerationResult enumerate_configurations(const FeatureModel& model, std::uint64_t limit);

inline constexpr int kDefaultFeatureBudget = 30;

/// Exact number of valid configurations. Refuses models with more than
/// `feature_budget` features rather than approximating.
std::uint64_t count_configurations(const FeatureModel& model,
                                   int feature_budget = kDefaultFeatureBudget);

/// Features appearing in no valid configuration.
std::set<std::string> dead_features(const FeatureModel& model);

/// Features appearing in every valid configuration. Raises DomainError when
/// the model has no valid configurations.
std::set<std::string> core_features(const FeatureModel& model);

}  // namespace fedont
