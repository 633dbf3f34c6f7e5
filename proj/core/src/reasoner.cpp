#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fedont/errors.hpp"
#include "fedont/ontology.hpp"
#include "sat_solver.hpp"

namespace fedont {

namespace {

constexpr int kTruthTableNameLimit = 20;

void check_expr_declared(const Ontology& onto, const ClassExpr& expr) {
  if (expr.kind() == ClassExpr::Kind::Named) {
    if (!onto.is_declared(expr.name()))
      throw DomainError("class '" + expr.name() + "' is not declared");
    return;
  }
  for (const auto& operand : expr.operands()) check_expr_declared(onto, operand);
}

// ---------------------------------------------------------------------------
// Truth-table backend: direct evaluation of expressions and axioms under an
// assignment, enumerated exhaustively. Deliberately shares no machinery with
// the CNF encoding below so the two act as independent routes.

class TruthTable {
 public:
  explicit TruthTable(const Ontology& onto) : onto_(onto) {
    const auto& names = onto.declared_classes();
    if (names.size() > kTruthTableNameLimit)
      throw DomainError("truth-table backend supports at most " +
                        std::to_string(kTruthTableNameLimit) + " names, ontology has " +
                        std::to_string(names.size()));
    for (std::size_t i = 0; i < names.size(); ++i) index_[names[i]] = i;
  }

  bool satisfiable(const ClassExpr& expr) const {
    std::size_t n = onto_.declared_classes().size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (!axioms_hold(mask)) continue;
      if (eval(expr, mask)) return true;
    }
    return false;
  }

 private:
  bool axioms_hold(std::uint64_t mask) const {
    for (const auto& axiom : onto_.axioms()) {
      switch (axiom.kind) {
        case Axiom::Kind::SubClassOf:
          if (eval(axiom.exprs[0], mask) && !eval(axiom.exprs[1], mask)) return false;
          break;
        case Axiom::Kind::EquivalentClasses:
          for (std::size_t i = 1; i < axiom.exprs.size(); ++i)
            if (eval(axiom.exprs[0], mask) != eval(axiom.exprs[i], mask)) return false;
          break;
        case Axiom::Kind::DisjointClasses:
          for (std::size_t i = 0; i < axiom.exprs.size(); ++i)
            for (std::size_t j = i + 1; j < axiom.exprs.size(); ++j)
              if (eval(axiom.exprs[i], mask) && eval(axiom.exprs[j], mask)) return false;
          break;
      }
    }
    return true;
  }

  bool eval(const ClassExpr& expr, std::uint64_t mask) const {
    switch (expr.kind()) {
      case ClassExpr::Kind::Named:
        return (mask >> index_.at(expr.name())) & 1;
      case ClassExpr::Kind::Thing:
        return true;
      case ClassExpr::Kind::Nothing:
        return false;
      case ClassExpr::Kind::Complement:
        return !eval(expr.operands()[0], mask);
      case ClassExpr::Kind::Intersection:
        for (const auto& operand : expr.operands())
          if (!eval(operand, mask)) return false;
        return true;
      case ClassExpr::Kind::Union:
        for (const auto& operand : expr.operands())
          if (eval(operand, mask)) return true;
        return false;
    }
    return false;
  }

  const Ontology& onto_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Search backend: Tseitin encoding of the axioms plus the query into CNF.

class CnfEncoder {
 public:
  explicit CnfEncoder(const Ontology& onto) {
    true_literal_ = solver_.new_variable();
    solver_.add_clause({true_literal_});
    for (const auto& name : onto.declared_classes())
      variable_of_[name] = solver_.new_variable();
    for (const auto& axiom : onto.axioms()) assert_axiom(axiom);
  }

  void assert_expr(const ClassExpr& expr) { solver_.add_clause({literal_of(expr)}); }

  bool solve() const { return solver_.solve(); }

 private:
  void assert_axiom(const Axiom& axiom) {
    switch (axiom.kind) {
      case Axiom::Kind::SubClassOf:
        solver_.add_clause({-literal_of(axiom.exprs[0]), literal_of(axiom.exprs[1])});
        break;
      case Axiom::Kind::EquivalentClasses:
        for (std::size_t i = 1; i < axiom.exprs.size(); ++i) {
          sat::Literal first = literal_of(axiom.exprs[0]);
          sat::Literal other = literal_of(axiom.exprs[i]);
          solver_.add_clause({-first, other});
          solver_.add_clause({first, -other});
        }
        break;
      case Axiom::Kind::DisjointClasses:
        for (std::size_t i = 0; i < axiom.exprs.size(); ++i)
          for (std::size_t j = i + 1; j < axiom.exprs.size(); ++j)
            solver_.add_clause({-literal_of(axiom.exprs[i]), -literal_of(axiom.exprs[j])});
        break;
    }
  }

  // Tseitin: returns a literal equivalent to the expression, adding defining
  // clauses for compound nodes.
  sat::Literal literal_of(const ClassExpr& expr) {
    switch (expr.kind()) {
      case ClassExpr::Kind::Named:
        return variable_of_.at(expr.name());
      case ClassExpr::Kind::Thing:
        return true_literal_;
      case ClassExpr::Kind::Nothing:
        return -true_literal_;
      case ClassExpr::Kind::Complement:
        return -literal_of(expr.operands()[0]);
      case ClassExpr::Kind::Intersection: {
        sat::Literal self = solver_.new_variable();
        std::vector<sat::Literal> reverse{self};
        for (const auto& operand : expr.operands()) {
          sat::Literal member = literal_of(operand);
          solver_.add_clause({-self, member});
          reverse.push_back(-member);
        }
        solver_.add_clause(std::move(reverse));
        return self;
      }
      case ClassExpr::Kind::Union: {
        sat::Literal self = solver_.new_variable();
        std::vector<sat::Literal> forward{-self};
        for (const auto& operand : expr.operands()) {
          sat::Literal member = literal_of(operand);
          solver_.add_clause({self, -member});
          forward.push_back(member);
        }
        solver_.add_clause(std::move(forward));
        return self;
      }
    }
    throw DomainError("unreachable class expression kind");
  }

  sat::Solver solver_;
  sat::Literal true_literal_;
  std::map<std::string, sat::Literal> variable_of_;
};

bool satisfiable_with(const Ontology& onto, const ClassExpr& expr, SatBackend backend) {
  if (backend == SatBackend::TruthTable) return TruthTable(onto).satisfiable(expr);
  CnfEncoder encoder(onto);
  encoder.assert_expr(expr);
  return encoder.solve();
}

}  // namespace

bool is_satisfiable(const Ontology& onto, const ClassExpr& expr, SatBackend backend) {
  ClassExpr resolved = onto.resolve(expr);
  check_expr_declared(onto, resolved);
  return satisfiable_with(onto, resolved, backend);
}

bool is_subsumed(const Ontology& onto, const ClassExpr& sub, const ClassExpr& sup,
                 SatBackend backend) {
  ClassExpr resolved_sub = onto.resolve(sub);
  ClassExpr resolved_sup = onto.resolve(sup);
  check_expr_declared(onto, resolved_sub);
  check_expr_declared(onto, resolved_sup);
  return !satisfiable_with(
      onto,
      ClassExpr::intersection_of({resolved_sub, ClassExpr::complement_of(resolved_sup)}),
      backend);
}

bool is_consistent(const Ontology& onto, SatBackend backend) {
  return satisfiable_with(onto, ClassExpr::thing(), backend);
}

Hierarchy classify(const Ontology& onto, SatBackend backend) {
  Hierarchy hierarchy;
  std::vector<std::string> satisfiable_names;
  for (const auto& name : onto.declared_classes()) {
    if (satisfiable_with(onto, ClassExpr::named(name), backend))
      satisfiable_names.push_back(name);
    else
      hierarchy.unsatisfiable.push_back(name);
  }
  std::sort(hierarchy.unsatisfiable.begin(), hierarchy.unsatisfiable.end());

  std::size_t n = satisfiable_names.size();
  std::vector<std::vector<bool>> subsumed(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      subsumed[i][j] = i == j || is_subsumed(onto, ClassExpr::named(satisfiable_names[i]),
                                             ClassExpr::named(satisfiable_names[j]), backend);

  // Mutual subsumption induces the equivalence classes.
  std::vector<int> node_of(n, -1);
  std::vector<std::vector<std::string>> nodes;
  std::vector<std::size_t> representative;  // index into satisfiable_names
  for (std::size_t i = 0; i < n; ++i) {
    if (node_of[i] != -1) continue;
    std::vector<std::string> members;
    for (std::size_t j = i; j < n; ++j) {
      if (node_of[j] == -1 && subsumed[i][j] && subsumed[j][i]) {
        node_of[j] = static_cast<int>(nodes.size());
        members.push_back(satisfiable_names[j]);
      }
    }
    std::sort(members.begin(), members.end());
    nodes.push_back(std::move(members));
    representative.push_back(i);
  }

  // Sort nodes by first member, keeping representatives aligned.
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return nodes[a].front() < nodes[b].front();
  });
  std::vector<std::size_t> rank(nodes.size());
  for (std::size_t position = 0; position < order.size(); ++position)
    rank[order[position]] = position;
  hierarchy.nodes.resize(nodes.size());
  std::vector<std::size_t> node_rep(nodes.size());
  for (std::size_t old = 0; old < nodes.size(); ++old) {
    hierarchy.nodes[rank[old]] = std::move(nodes[old]);
    node_rep[rank[old]] = representative[old];
  }

  // Direct edges: the transitive reduction of the partial order between
  // nodes. An edge is kept iff no third node sits strictly between.
  auto below = [&](std::size_t a, std::size_t b) {
    return subsumed[node_rep[a]][node_rep[b]];
  };
  for (std::size_t child = 0; child < hierarchy.nodes.size(); ++child) {
    for (std::size_t parent = 0; parent < hierarchy.nodes.size(); ++parent) {
      if (child == parent || !below(child, parent)) continue;
      bool direct = true;
      for (std::size_t middle = 0; middle < hierarchy.nodes.size(); ++middle) {
        if (middle == child || middle == parent) continue;
        if (below(child, middle) && below(middle, parent)) {
          direct = false;
          break;
        }
      }
      if (direct) hierarchy.edges.emplace_back(child, parent);
    }
  }
  std::sort(hierarchy.edges.begin(), hierarchy.edges.end());
  return hierarchy;
}

}  // namespace fedont
