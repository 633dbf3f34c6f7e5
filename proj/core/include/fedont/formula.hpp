#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fedont {

/// Immutable propositional formula over named variables. Shared subtrees are
/// reference counted; copying a Formula is cheap.
class Formula {
 public:
  enum class Kind { True, False, Var, Not, And, Or, Implies, Iff };

  static Formula constant(bool value);
  static Formula var(std::string name);
  static Formula negation(Formula operand);
  /// Empty conjunction is True.
  static Formula conjunction(std::vector<Formula> operands);
  /// Empty disjunction is False.
  static Formula disjunction(std::vector<Formula> operands);
  static Formula implies(Formula antecedent, Formula consequent);
  static Formula iff(Formula left, Formula right);

  Kind kind() const;
  /// Valid only for Kind::Var.
  const std::string& var_name() const;
  const std::vector<Formula>& operands() const;

  /// Evaluates under the assignment "selected variables are true, everything
  /// else false".
  bool evaluate(const std::set<std::string>& true_vars) const;

  /// All variable names occurring in the formula, sorted.
  std::set<std::string> variables() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> operands);
  std::shared_ptr<const Node> node_;
};

}  // namespace fedont
