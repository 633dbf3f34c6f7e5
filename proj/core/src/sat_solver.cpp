#include "sat_solver.hpp"

#include <cmath>
#include <cstdlib>

namespace fedont::sat {

namespace {

enum : signed char { kUnassigned = -1, kFalse = 0, kTrue = 1 };

struct Search {
  const std::vector<Clause>& clauses;
  std::vector<signed char> assignment;  // indexed by variable

  bool value_of(Literal literal) const {
    signed char v = assignment[static_cast<std::size_t>(std::abs(literal))];
    if (v == kUnassigned) return false;
    return (literal > 0) == (v == kTrue);
  }
  bool is_assigned(Literal literal) const {
    return assignment[static_cast<std::size_t>(std::abs(literal))] != kUnassigned;
  }
  void assign(Literal literal) {
    assignment[static_cast<std::size_t>(std::abs(literal))] =
        literal > 0 ? kTrue : kFalse;
  }
  void unassign(Literal literal) {
    assignment[static_cast<std::size_t>(std::abs(literal))] = kUnassigned;
  }

  // Scans for unit clauses until fixpoint. Returns false on conflict; records
  // the implied literals on `trail` so the caller can undo them.
  bool propagate(std::vector<Literal>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Clause& clause : clauses) {
        Literal unit = 0;
        bool satisfied = false;
        int unassigned = 0;
        for (Literal literal : clause) {
          if (!is_assigned(literal)) {
            ++unassigned;
            unit = literal;
          } else if (value_of(literal)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(unit);
          trail.push_back(unit);
          changed = true;
        }
      }
    }
    return true;
  }

  Literal pick_branch_variable() const {
    // Most frequent unassigned variable across not-yet-satisfied clauses.
    std::vector<int> occurrences(assignment.size(), 0);
    for (const Clause& clause : clauses) {
      bool satisfied = false;
      for (Literal literal : clause)
        if (is_assigned(literal) && value_of(literal)) {
          satisfied = true;
          break;
        }
      if (satisfied) continue;
      for (Literal literal : clause)
        if (!is_assigned(literal)) ++occurrences[static_cast<std::size_t>(std::abs(literal))];
    }
    int best = 0;
    for (std::size_t v = 1; v < occurrences.size(); ++v)
      if (occurrences[v] > (best == 0 ? 0 : occurrences[static_cast<std::size_t>(best)]))
        best = static_cast<int>(v);
    return best;
  }

  bool solve() {
    std::vector<Literal> trail;
    if (!propagate(trail)) {
      for (Literal literal : trail) unassign(literal);
      return false;
    }
    Literal variable = pick_branch_variable();
    if (variable == 0) {
      // Nothing left to decide: every clause is satisfied.
      for (Literal literal : trail) unassign(literal);
      return true;
    }
    for (Literal candidate : {variable, -variable}) {
      assign(candidate);
      bool result = solve();
      unassign(candidate);
      if (result) {
        for (Literal literal : trail) unassign(literal);
        return true;
      }
    }
    for (Literal literal : trail) unassign(literal);
    return false;
  }
};

}  // namespace

void Solver::add_clause(Clause clause) {
  if (clause.empty()) {
    contains_empty_clause_ = true;
    return;
  }
  clauses_.push_back(std::move(clause));
}

bool Solver::solve() const {
  if (contains_empty_clause_) return false;
  Search search{clauses_, std::vector<signed char>(
                              static_cast<std::size_t>(variable_count_) + 1, kUnassigned)};
  return search.solve();
}

}  // namespace fedont::sat
