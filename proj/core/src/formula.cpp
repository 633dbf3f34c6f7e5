#include "fedont/formula.hpp"

#include <cassert>
#include <utility>

namespace fedont {

struct Formula::Node {
  Kind kind;
  std::string name;               // Var only
  std::vector<Formula> operands;  // Not: 1; Implies/Iff: 2; And/Or: any
};

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> operands) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->operands = std::move(operands);
  return Formula(std::shared_ptr<const Node>(std::move(node)));
}

Formula Formula::constant(bool value) {
  return make(value ? Kind::True : Kind::False, {}, {});
}

Formula Formula::var(std::string name) { return make(Kind::Var, std::move(name), {}); }

Formula Formula::negation(Formula operand) {
  return make(Kind::Not, {}, {std::move(operand)});
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.empty()) return constant(true);
  if (operands.size() == 1) return operands.front();
  return make(Kind::And, {}, std::move(operands));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.empty()) return constant(false);
  if (operands.size() == 1) return operands.front();
  return make(Kind::Or, {}, std::move(operands));
}

Formula Formula::implies(Formula antecedent, Formula consequent) {
  return make(Kind::Implies, {}, {std::move(antecedent), std::move(consequent)});
}

Formula Formula::iff(Formula left, Formula right) {
  return make(Kind::Iff, {}, {std::move(left), std::move(right)});
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::var_name() const {
  assert(node_->kind == Kind::Var);
  return node_->name;
}

const std::vector<Formula>& Formula::operands() const { return node_->operands; }

bool Formula::evaluate(const std::set<std::string>& true_vars) const {
  switch (node_->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Var:
      return true_vars.count(node_->name) > 0;
    case Kind::Not:
      return !node_->operands[0].evaluate(true_vars);
    case Kind::And:
      for (const auto& operand : node_->operands)
        if (!operand.evaluate(true_vars)) return false;
      return true;
    case Kind::Or:
      for (const auto& operand : node_->operands)
        if (operand.evaluate(true_vars)) return true;
      return false;
    case Kind::Implies:
      return !node_->operands[0].evaluate(true_vars) ||
             node_->operands[1].evaluate(true_vars);
    case Kind::Iff:
      return node_->operands[0].evaluate(true_vars) ==
             node_->operands[1].evaluate(true_vars);
  }
  return false;
}

std::set<std::string> Formula::variables() const {
  std::set<std::string> vars;
  if (node_->kind == Kind::Var) {
    vars.insert(node_->name);
  } else {
    for (const auto& operand : node_->operands) {
      auto sub = operand.variables();
      vars.insert(sub.begin(), sub.end());
    }
  }
  return vars;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->name != other.node_->name) return false;
  return node_->operands == other.node_->operands;
}

}  // namespace fedont
