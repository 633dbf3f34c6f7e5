#pragma once

#include <cstddef>
#include <vector>

namespace fedont::sat {

/// Literal encoding: +v / -v for variable v, variables numbered from 1.
using Literal = int;
using Clause = std::vector<Literal>;

/// Small DPLL solver with unit propagation; enough for desk-scale ontology
/// reasoning. Clauses are immutable once added.
class Solver {
 public:
  /// Returns a fresh variable number.
  int new_variable() { return ++variable_count_; }
  int variable_count() const { return variable_count_; }

  void add_clause(Clause clause);

  /// Decides satisfiability of the clause set.
  bool solve() const;

 private:
  int variable_count_ = 0;
  std::vector<Clause> clauses_;
  bool contains_empty_clause_ = false;
};

}  // namespace fedont::sat
