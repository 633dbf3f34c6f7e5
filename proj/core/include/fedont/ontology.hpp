#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fedont {

/// Class expression of the propositionally closed fragment: named classes,
/// Thing, Nothing, intersection, union, and complement. Immutable shared
/// tree; cheap to copy.
class ClassExpr {
 public:
  enum class Kind { Named, Thing, Nothing, Intersection, Union, Complement };

  static ClassExpr named(std::string name);
  static ClassExpr thing();
  static ClassExpr nothing();
  /// Arity >= 2 enforced.
  static ClassExpr intersection_of(std::vector<ClassExpr> operands);
  /// Arity >= 2 enforced.
  static ClassExpr union_of(std::vector<ClassExpr> operands);
  static ClassExpr complement_of(ClassExpr operand);

  Kind kind() const;
  /// Valid only for Kind::Named.
  const std::string& name() const;
  const std::vector<ClassExpr>& operands() const;

  /// Structural equality.
  bool operator==(const ClassExpr& other) const;

 private:
  struct Node;
  explicit ClassExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ClassExpr make(Kind kind, std::string name, std::vector<ClassExpr> operands);
  std::shared_ptr<const Node> node_;
};

struct Axiom {
  enum class Kind { SubClassOf, EquivalentClasses, DisjointClasses };

  Kind kind;
  /// SubClassOf holds exactly [sub, sup]; the class axioms hold >= 2 entries.
  std::vector<ClassExpr> exprs;

  static Axiom sub_class_of(ClassExpr sub, ClassExpr sup);
  static Axiom equivalent_classes(std::vector<ClassExpr> exprs);
  static Axiom disjoint_classes(std::vector<ClassExpr> exprs);

  bool operator==(const Axiom& other) const;
};

/// Named classes plus subclass/equivalence/disjointness axioms. Class names
/// are stored fully qualified as "prefix:Local"; bare names passed to
/// declare() or used inside axioms are qualified with the ontology's own
/// prefix. Declaration and axiom order are preserved.
class Ontology {
 public:
  explicit Ontology(std::string iri_prefix);

  const std::string& iri_prefix() const { return iri_prefix_; }
  const std::vector<std::string>& declared_classes() const { return declared_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  /// Declares a class; idempotent. Returns the qualified name.
  std::string declare(const std::string& name);
  bool is_declared(const std::string& name) const;
  /// Qualifies a bare name with this ontology's prefix; qualified names pass
  /// through unchanged.
  std::string qualify(const std::string& name) const;
  /// Rewrites every named class inside the expression through qualify().
  ClassExpr resolve(const ClassExpr& expr) const;

  /// Adds an axiom after qualifying its named classes. Every referenced name
  /// must be declared.
  void add(Axiom axiom);

  bool operator==(const Ontology& other) const;

 private:
  std::string iri_prefix_;
  std::vector<std::string> declared_;
  std::unordered_set<std::string> declared_set_;
  std::vector<Axiom> axioms_;
};

/// Inferred class hierarchy. Nodes are equivalence classes of mutually
/// subsumed satisfiable named classes (members sorted, nodes sorted by first
/// member); edges are the transitive reduction of the subsumption order
/// between nodes, as (child, parent) node indices sorted ascending.
struct Hierarchy {
  std::vector<std::vector<std::string>> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::string> unsatisfiable;

  bool operator==(const Hierarchy&) const = default;
};

enum class SatBackend {
  /// DPLL search over a Tseitin CNF encoding. The default.
  Search,
  /// Brute-force truth table; refuses ontologies with more than 20 names.
  TruthTable,
};

/// True iff some truth assignment over the declared class names satisfies
/// every axiom and makes `expr` true. Undeclared names raise DomainError.
bool is_satisfiable(const Ontology& onto, const ClassExpr& expr,
                    SatBackend backend = SatBackend::Search);

/// True iff sub is subsumed by sup w.r.t. the ontology, decided as
/// unsatisfiability of sub AND NOT sup.
bool is_subsumed(const Ontology& onto, const ClassExpr& sub, const ClassExpr& sup,
                 SatBackend backend = SatBackend::Search);

/// True iff the axiom set itself is satisfiable.
bool is_consistent(const Ontology& onto, SatBackend backend = SatBackend::Search);

/// Computes the inferred hierarchy over all declared names.
Hierarchy classify(const Ontology& onto, SatBackend backend = SatBackend::Search);

/// Union of declarations and axioms, base first, duplicate axioms removed.
/// The result keeps base's prefix. Declaring the same unqualified name under
/// two distinct prefixes is an error.
Ontology merge(const Ontology& base, const Ontology& other);

}  // namespace fedont
