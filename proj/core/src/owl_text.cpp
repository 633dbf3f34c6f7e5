#include "fedont/owl_text.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "fedont/errors.hpp"

namespace fedont {

namespace {

std::pair<std::string, std::string> split_name(const std::string& qualified) {
  auto colon = qualified.find(':');
  if (colon == std::string::npos) return {"", qualified};
  return {qualified.substr(0, colon), qualified.substr(colon + 1)};
}

std::string render_name(const Ontology& onto, const std::string& qualified) {
  auto [prefix, local] = split_name(qualified);
  if (prefix == onto.iri_prefix()) return ":" + local;
  return qualified;
}

void render_expr(const Ontology& onto, const ClassExpr& expr, std::string& out) {
  switch (expr.kind()) {
    case ClassExpr::Kind::Named:
      out += render_name(onto, expr.name());
      return;
    case ClassExpr::Kind::Thing:
      out += "owl:Thing";
      return;
    case ClassExpr::Kind::Nothing:
      out += "owl:Nothing";
      return;
    case ClassExpr::Kind::Complement:
      out += "ObjectComplementOf(";
      render_expr(onto, expr.operands()[0], out);
      out += ")";
      return;
    case ClassExpr::Kind::Intersection:
    case ClassExpr::Kind::Union:
      out += expr.kind() == ClassExpr::Kind::Intersection ? "ObjectIntersectionOf("
                                                          : "ObjectUnionOf(";
      for (std::size_t i = 0; i < expr.operands().size(); ++i) {
        if (i > 0) out += " ";
        render_expr(onto, expr.operands()[i], out);
      }
      out += ")";
      return;
  }
}

void render_axiom(const Ontology& onto, const Axiom& axiom, std::string& out) {
  switch (axiom.kind) {
    case Axiom::Kind::SubClassOf:
      out += "SubClassOf(";
      break;
    case Axiom::Kind::EquivalentClasses:
      out += "EquivalentClasses(";
      break;
    case Axiom::Kind::DisjointClasses:
      out += "DisjointClasses(";
      break;
  }
  for (std::size_t i = 0; i < axiom.exprs.size(); ++i) {
    if (i > 0) out += " ";
    render_expr(onto, axiom.exprs[i], out);
  }
  out += ")\n";
}

void collect_prefixes(const ClassExpr& expr, std::set<std::string>& prefixes) {
  if (expr.kind() == ClassExpr::Kind::Named) {
    prefixes.insert(split_name(expr.name()).first);
    return;
  }
  for (const auto& operand : expr.operands()) collect_prefixes(operand, prefixes);
}

}  // namespace

std::string to_owl(const Ontology& onto) {
  std::set<std::string> prefixes;
  for (const auto& name : onto.declared_classes())
    prefixes.insert(split_name(name).first);
  for (const auto& axiom : onto.axioms())
    for (const auto& expr : axiom.exprs) collect_prefixes(expr, prefixes);
  prefixes.erase(onto.iri_prefix());
  prefixes.erase("");

  std::string out = "Prefix(:=<urn:fedont:" + onto.iri_prefix() + "#>)\n";
  for (const auto& prefix : prefixes)
    out += "Prefix(" + prefix + ":=<urn:fedont:" + prefix + "#>)\n";
  out += "Ontology(\n";
  for (const auto& name : onto.declared_classes())
    out += "Declaration(Class(" + render_name(onto, name) + "))\n";
  for (const auto& axiom : onto.axioms()) render_axiom(onto, axiom, out);
  out += ")\n";
  return out;
}

namespace {

enum class OwlTokenKind { LParen, RParen, Bind, Iri, Word, End };

struct OwlToken {
  OwlTokenKind kind = OwlTokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class OwlLexer {
 public:
  explicit OwlLexer(std::string_view text) : text_(text) {}

  OwlToken next() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
            text_[pos_] == '\n'))
      advance();
    OwlToken token;
    token.line = line_;
    token.column = column_;
    if (pos_ >= text_.size()) return token;
    char c = text_[pos_];
    if (c == '(') {
      token.kind = OwlTokenKind::LParen;
      advance();
      return token;
    }
    if (c == ')') {
      token.kind = OwlTokenKind::RParen;
      advance();
      return token;
    }
    if (c == '<') {
      advance();
      std::string iri;
      while (pos_ < text_.size() && text_[pos_] != '>' && text_[pos_] != '\n') {
        iri.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '>') {
        token.kind = OwlTokenKind::Word;
        token.text = "<unterminated-iri";
        return token;
      }
      advance();
      token.kind = OwlTokenKind::Iri;
      token.text = std::move(iri);
      return token;
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      advance();
      advance();
      token.kind = OwlTokenKind::Bind;
      return token;
    }
    if (c == ':' || std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      if (c == ':') {
        word.push_back(c);
        advance();
      }
      while (pos_ < text_.size()) {
        char current = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(current)) || current == '_') {
          word.push_back(current);
          advance();
          continue;
        }
        // A ':' continues the token only when a local name follows; "sym:="
        // must split into "sym" and the bind token.
        if (current == ':' && word.find(':') == std::string::npos && pos_ + 1 < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) ||
             text_[pos_ + 1] == '_')) {
          word.push_back(current);
          advance();
          continue;
        }
        break;
      }
      token.kind = OwlTokenKind::Word;
      token.text = std::move(word);
      return token;
    }
    token.kind = OwlTokenKind::Word;
    token.text = std::string(1, c);
    advance();
    return token;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

struct OwlParseAbort {};

class OwlParser {
 public:
  explicit OwlParser(std::string_view text) : lexer_(text) { shift(); }

  OwlParseResult run() {
    OwlParseResult result;
    try {
      parse_file();
      result.ontology = std::move(ontology_);
    } catch (const OwlParseAbort&) {
    }
    result.errors = std::move(errors_);
    if (!result.errors.empty()) result.ontology.reset();
    return result;
  }

 private:
  void parse_file() {
    if (current_.kind == OwlTokenKind::End) fail("missing Ontology");
    // Prefix lines; the first (default) one names the ontology.
    bool have_default = false;
    while (current_.kind == OwlTokenKind::Word && current_.text == "Prefix") {
      shift();
      expect(OwlTokenKind::LParen, "'('");
      std::string bound_prefix;
      if (current_.kind == OwlTokenKind::Word) {
        bound_prefix = current_.text;
        if (!bound_prefix.empty() && bound_prefix.back() == ':')
          bound_prefix.pop_back();
        shift();
      }
      expect(OwlTokenKind::Bind, "':='");
      if (current_.kind != OwlTokenKind::Iri) fail("expected IRI");
      std::string iri = current_.text;
      shift();
      expect(OwlTokenKind::RParen, "')'");

      const std::string scheme = "urn:fedont:";
      if (iri.size() <= scheme.size() + 1 || iri.rfind(scheme, 0) != 0 || iri.back() != '#')
        fail("unsupported prefix IRI '" + iri + "' (expected urn:fedont:NAME#)");
      std::string iri_name = iri.substr(scheme.size(), iri.size() - scheme.size() - 1);
      if (bound_prefix.empty()) {
        if (have_default) fail("duplicate default Prefix declaration");
        have_default = true;
        try {
          ontology_.emplace(iri_name);
        } catch (const DomainError& e) {
          fail(e.what());
        }
        known_prefixes_.insert(iri_name);
      } else {
        if (bound_prefix != iri_name)
          fail("prefix '" + bound_prefix + "' must be bound to urn:fedont:" + bound_prefix +
               "#");
        known_prefixes_.insert(bound_prefix);
      }
    }
    if (!have_default) fail("missing default Prefix declaration");

    if (current_.kind != OwlTokenKind::Word || current_.text != "Ontology")
      fail("missing Ontology");
    shift();
    expect(OwlTokenKind::LParen, "'('");
    while (current_.kind != OwlTokenKind::RParen) {
      if (current_.kind == OwlTokenKind::End) fail("unclosed Ontology(");
      parse_item();
    }
    shift();
    if (current_.kind != OwlTokenKind::End) fail("trailing input after ')'");
  }

  void parse_item() {
    if (current_.kind != OwlTokenKind::Word) fail("expected axiom or Declaration");
    OwlToken item = current_;
    const std::string& word = item.text;
    if (word == "Declaration") {
      shift();
      expect(OwlTokenKind::LParen, "'('");
      if (current_.kind != OwlTokenKind::Word || current_.text != "Class")
        fail("only Class declarations are supported");
      shift();
      expect(OwlTokenKind::LParen, "'('");
      try {
        ontology_->declare(parse_name());
      } catch (const DomainError& e) {
        fail_at(item, e.what());
      }
      expect(OwlTokenKind::RParen, "')'");
      expect(OwlTokenKind::RParen, "')'");
      return;
    }
    if (word == "SubClassOf" || word == "EquivalentClasses" || word == "DisjointClasses") {
      shift();
      expect(OwlTokenKind::LParen, "'('");
      std::vector<ClassExpr> exprs;
      while (current_.kind != OwlTokenKind::RParen) {
        if (current_.kind == OwlTokenKind::End) fail_at(item, "unclosed axiom");
        exprs.push_back(parse_expr());
      }
      shift();
      try {
        if (word == "SubClassOf") {
          if (exprs.size() != 2) fail_at(item, "SubClassOf needs exactly 2 expressions");
          ontology_->add(Axiom::sub_class_of(exprs[0], exprs[1]));
        } else if (word == "EquivalentClasses") {
          ontology_->add(Axiom::equivalent_classes(std::move(exprs)));
        } else {
          ontology_->add(Axiom::disjoint_classes(std::move(exprs)));
        }
      } catch (const DomainError& e) {
        fail_at(item, e.what());
      }
      return;
    }
    fail("construct '" + word + "' outside supported fragment");
  }

  ClassExpr parse_expr() {
    if (current_.kind != OwlTokenKind::Word) fail("expected class expression");
    OwlToken start = current_;
    const std::string& word = start.text;
    if (word == "owl:Thing") {
      shift();
      return ClassExpr::thing();
    }
    if (word == "owl:Nothing") {
      shift();
      return ClassExpr::nothing();
    }
    if (word == "ObjectComplementOf") {
      shift();
      expect(OwlTokenKind::LParen, "'('");
      ClassExpr operand = parse_expr();
      expect(OwlTokenKind::RParen, "')'");
      return ClassExpr::complement_of(std::move(operand));
    }
    if (word == "ObjectIntersectionOf" || word == "ObjectUnionOf") {
      shift();
      expect(OwlTokenKind::LParen, "'('");
      std::vector<ClassExpr> operands;
      while (current_.kind != OwlTokenKind::RParen) {
        if (current_.kind == OwlTokenKind::End) fail_at(start, "unclosed expression");
        operands.push_back(parse_expr());
      }
      shift();
      if (operands.size() < 2) fail_at(start, word + " needs >= 2 operands");
      return word == "ObjectIntersectionOf" ? ClassExpr::intersection_of(std::move(operands))
                                            : ClassExpr::union_of(std::move(operands));
    }
    if (!word.empty() && (word[0] == ':' || word.find(':') != std::string::npos))
      return ClassExpr::named(parse_name());
    fail("construct '" + word + "' outside supported fragment");
  }

  // ":Local" resolves against the default prefix; "p:Local" must use a
  // declared prefix.
  std::string parse_name() {
    if (current_.kind != OwlTokenKind::Word) fail("expected class name");
    std::string word = current_.text;
    if (word.empty() || word.find(':') == std::string::npos)
      fail("expected prefixed class name, got '" + word + "'");
    std::string qualified;
    if (word[0] == ':') {
      qualified = ontology_->iri_prefix() + word;
    } else {
      std::string prefix = word.substr(0, word.find(':'));
      if (!known_prefixes_.count(prefix))
        fail("undeclared prefix '" + prefix + "'");
      qualified = word;
    }
    shift();
    return qualified;
  }

  void expect(OwlTokenKind kind, const std::string& what) {
    if (current_.kind != kind) fail("expected " + what);
    shift();
  }

  [[noreturn]] void fail(const std::string& message) { fail_at(current_, message); }

  [[noreturn]] void fail_at(const OwlToken& token, const std::string& message) {
    errors_.push_back({token.line, token.column, message});
    throw OwlParseAbort{};
  }

  void shift() { current_ = lexer_.next(); }

  OwlLexer lexer_;
  OwlToken current_;
  std::optional<Ontology> ontology_;
  std::set<std::string> known_prefixes_;
  std::vector<OwlParseError> errors_;
};

}  // namespace

OwlParseResult parse_owl(std::string_view text) { return OwlParser(text).run(); }

}  // namespace fedont
