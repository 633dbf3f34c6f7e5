#include "fedont/ontology.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "fedont/errors.hpp"

namespace fedont {

struct ClassExpr::Node {
  Kind kind;
  std::string name;  // Named only
  std::vector<ClassExpr> operands;
};

namespace {

bool is_identifier(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

ClassExpr ClassExpr::named(std::string name) {
  if (name.empty()) throw DomainError("class name must not be empty");
  return make(Kind::Named, std::move(name), {});
}

ClassExpr ClassExpr::thing() { return make(Kind::Thing, {}, {}); }

ClassExpr ClassExpr::nothing() { return make(Kind::Nothing, {}, {}); }

ClassExpr ClassExpr::intersection_of(std::vector<ClassExpr> operands) {
  if (operands.size() < 2) throw DomainError("IntersectionOf needs >= 2 operands");
  return make(Kind::Intersection, {}, std::move(operands));
}

ClassExpr ClassExpr::union_of(std::vector<ClassExpr> operands) {
  if (operands.size() < 2) throw DomainError("UnionOf needs >= 2 operands");
  return make(Kind::Union, {}, std::move(operands));
}

ClassExpr ClassExpr::complement_of(ClassExpr operand) {
  return make(Kind::Complement, {}, {std::move(operand)});
}

ClassExpr::Kind ClassExpr::kind() const { return node_->kind; }

const std::string& ClassExpr::name() const {
  assert(node_->kind == Kind::Named);
  return node_->name;
}

const std::vector<ClassExpr>& ClassExpr::operands() const { return node_->operands; }

bool ClassExpr::operator==(const ClassExpr& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->name != other.node_->name) return false;
  return node_->operands == other.node_->operands;
}

Axiom Axiom::sub_class_of(ClassExpr sub, ClassExpr sup) {
  return {Kind::SubClassOf, {std::move(sub), std::move(sup)}};
}

Axiom Axiom::equivalent_classes(std::vector<ClassExpr> exprs) {
  if (exprs.size() < 2) throw DomainError("EquivalentClasses needs >= 2 classes");
  return {Kind::EquivalentClasses, std::move(exprs)};
}

Axiom Axiom::disjoint_classes(std::vector<ClassExpr> exprs) {
  if (exprs.size() < 2) throw DomainError("DisjointClasses needs >= 2 classes");
  return {Kind::DisjointClasses, std::move(exprs)};
}

bool Axiom::operator==(const Axiom& other) const {
  return kind == other.kind && exprs == other.exprs;
}

Ontology::Ontology(std::string iri_prefix) : iri_prefix_(std::move(iri_prefix)) {
  if (!is_identifier(iri_prefix_))
    throw DomainError("ontology prefix '" + iri_prefix_ + "' is not an identifier");
}

std::string Ontology::qualify(const std::string& name) const {
  if (name.find(':') != std::string::npos) return name;
  return iri_prefix_ + ":" + name;
}

std::string Ontology::declare(const std::string& name) {
  std::string qualified = qualify(name);
  auto colon = qualified.find(':');
  std::string prefix = qualified.substr(0, colon);
  std::string local = qualified.substr(colon + 1);
  if (!is_identifier(prefix) || !is_identifier(local))
    throw DomainError("class name '" + qualified + "' is not of the form prefix:Local");
  if (declared_set_.insert(qualified).second) declared_.push_back(qualified);
  return qualified;
}

bool Ontology::is_declared(const std::string& name) const {
  return declared_set_.count(qualify(name)) > 0;
}

namespace {

ClassExpr qualify_expr(const Ontology& onto, const ClassExpr& expr) {
  switch (expr.kind()) {
    case ClassExpr::Kind::Named:
      return ClassExpr::named(onto.qualify(expr.name()));
    case ClassExpr::Kind::Thing:
    case ClassExpr::Kind::Nothing:
      return expr;
    case ClassExpr::Kind::Complement:
      return ClassExpr::complement_of(qualify_expr(onto, expr.operands()[0]));
    case ClassExpr::Kind::Intersection:
    case ClassExpr::Kind::Union: {
      std::vector<ClassExpr> operands;
      operands.reserve(expr.operands().size());
      for (const auto& operand : expr.operands())
        operands.push_back(qualify_expr(onto, operand));
      return expr.kind() == ClassExpr::Kind::Intersection
                 ? ClassExpr::intersection_of(std::move(operands))
                 : ClassExpr::union_of(std::move(operands));
    }
  }
  throw DomainError("unreachable class expression kind");
}

void check_declared(const Ontology& onto, const ClassExpr& expr) {
  if (expr.kind() == ClassExpr::Kind::Named) {
    if (!onto.is_declared(expr.name()))
      throw DomainError("class '" + expr.name() + "' is not declared");
    return;
  }
  for (const auto& operand : expr.operands()) check_declared(onto, operand);
}

}  // namespace

ClassExpr Ontology::resolve(const ClassExpr& expr) const { return qualify_expr(*this, expr); }

void Ontology::add(Axiom axiom) {
  for (auto& expr : axiom.exprs) {
    expr = qualify_expr(*this, expr);
    check_declared(*this, expr);
  }
  axioms_.push_back(std::move(axiom));
}

bool Ontology::operator==(const Ontology& other) const {
  return iri_prefix_ == other.iri_prefix_ && declared_ == other.declared_ &&
         axioms_ == other.axioms_;
}

Ontology merge(const Ontology& base, const Ontology& other) {
  if (base.iri_prefix() != other.iri_prefix()) {
    // Unqualified declarations would clash silently across namespaces.
    for (const auto& name : base.declared_classes())
      if (name.find(':') == std::string::npos && other.is_declared(name))
        throw DomainError("unqualified class '" + name +
                          "' collides across prefixes '" + base.iri_prefix() + "' and '" +
                          other.iri_prefix() + "'");
  }
  Ontology merged(base.iri_prefix());
  for (const auto& name : base.declared_classes()) merged.declare(name);
  for (const auto& name : other.declared_classes()) merged.declare(name);
  for (const auto& axiom : base.axioms()) merged.add(axiom);
  for (const auto& axiom : other.axioms()) {
    if (std::find(merged.axioms().begin(), merged.axioms().end(), axiom) ==
        merged.axioms().end())
      merged.add(axiom);
  }
  return merged;
}

ClassExpr ClassExpr::make(Kind kind, std::string name, std::vector<ClassExpr> operands) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->operands = std::move(operands);
  return ClassExpr(std::shared_ptr<const Node>(std::move(node)));
}

}  // namespace fedont
