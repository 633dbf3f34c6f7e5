#include "fedont/fm_text.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>

#include "fedont/terms.hpp"

namespace fedont {

namespace {

enum class TokenKind { Name, String, LBrace, RBrace, End, Bad };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceSpan span;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next(std::vector<ParseError>& errors) {
    skip_trivia();
    Token token;
    token.span = {line_, column_, 1};
    if (pos_ >= text_.size()) {
      token.kind = TokenKind::End;
      return token;
    }
    char c = text_[pos_];
    if (c == '{' || c == '}') {
      token.kind = c == '{' ? TokenKind::LBrace : TokenKind::RBrace;
      token.text = c;
      advance();
      return token;
    }
    if (c == '"') {
      advance();
      std::string value;
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') {
        value.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '"') {
        errors.push_back({token.span, "unterminated string literal", std::nullopt,
                          ParseErrorKind::Lexical});
        token.kind = TokenKind::Bad;
        return token;
      }
      advance();  // closing quote
      token.kind = TokenKind::String;
      token.text = std::move(value);
      token.span.length = static_cast<int>(token.text.size()) + 2;
      return token;
    }
    if (is_name_start(c)) {
      std::string name;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) {
        name.push_back(text_[pos_]);
        advance();
      }
      token.kind = TokenKind::Name;
      token.span.length = static_cast<int>(name.size());
      token.text = std::move(name);
      return token;
    }
    errors.push_back({token.span, std::string("unexpected character '") + c + "'",
                      std::nullopt, ParseErrorKind::Lexical});
    advance();
    token.kind = TokenKind::Bad;
    return token;
  }

 private:
  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

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

const std::set<std::string>& keywords() {
  static const std::set<std::string> words = {
      "model",       "feature", "mandatory", "optional", "or",
      "alternative", "group",   "constraint", "requires", "excludes"};
  return words;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  ParseResult run() {
    ParseResult result;
    FeatureModel model;

    expect_keyword("model");
    if (current_.kind == TokenKind::String) {
      model.name = current_.text;
      shift();
    } else {
      fail("expected model name string", "quoted string");
    }
    expect_keyword("feature");
    model.root = parse_feature_def();
    while (current_.kind == TokenKind::Name && current_.text == "constraint")
      parse_constraint(model);
    if (current_.kind != TokenKind::End)
      fail("unexpected trailing input", "end of input");

    if (!errors_.empty()) {
      result.errors = std::move(errors_);
      return result;
    }
    check_semantics(model);
    if (!errors_.empty()) {
      result.errors = std::move(errors_);
      return result;
    }
    result.model = std::move(model);
    return result;
  }

 private:
  Feature parse_feature_def() {
    Feature feature;
    feature.name = expect_name("feature name");
    name_spans_.emplace_back(feature.name, previous_span_);
    if (current_.kind == TokenKind::LBrace) parse_block(feature);
    return feature;
  }

  void parse_block(Feature& owner) {
    SourceSpan open = current_.span;
    shift();  // {
    while (current_.kind != TokenKind::RBrace) {
      if (current_.kind == TokenKind::End) {
        fail_at(open, "unclosed '{'", "'}'");
        return;
      }
      if (current_.kind != TokenKind::Name) {
        fail("expected item", "'mandatory', 'optional', 'or', 'alternative' or '}'");
        shift();
        continue;
      }
      const std::string& word = current_.text;
      if (word == "mandatory" || word == "optional") {
        ChildKind kind = word == "mandatory" ? ChildKind::Mandatory : ChildKind::Optional;
        shift();
        owner.solitary_children.push_back({kind, parse_feature_def()});
      } else if (word == "or" || word == "alternative") {
        GroupKind kind = word == "or" ? GroupKind::Or : GroupKind::Alternative;
        SourceSpan group_span = current_.span;
        shift();
        expect_keyword("group");
        FeatureGroup group{kind, {}};
        if (current_.kind != TokenKind::LBrace) {
          fail("expected '{' to open group", "'{'");
          return;
        }
        SourceSpan member_open = current_.span;
        shift();
        while (current_.kind != TokenKind::RBrace) {
          if (current_.kind == TokenKind::End) {
            fail_at(member_open, "unclosed '{'", "'}'");
            return;
          }
          if (current_.kind != TokenKind::Name || keywords().count(current_.text)) {
            fail("expected group member name", "feature name");
            shift();  // keep making progress
            continue;
          }
          group.members.push_back(parse_feature_def());
        }
        shift();  // }
        if (group.members.size() < 2)
          fail_at(group_span, "group needs >= 2 members", std::nullopt,
                  ParseErrorKind::Semantic);
        owner.groups.push_back(std::move(group));
      } else {
        fail("unexpected word '" + word + "' in block",
             "'mandatory', 'optional', 'or', 'alternative' or '}'");
        shift();
      }
    }
    shift();  // }
  }

  void parse_constraint(FeatureModel& model) {
    shift();  // constraint
    CrossTreeConstraint constraint;
    constraint.from = expect_name("feature name");
    SourceSpan from_span = previous_span_;
    if (current_.kind == TokenKind::Name &&
        (current_.text == "requires" || current_.text == "excludes")) {
      constraint.kind = current_.text == "requires" ? ConstraintKind::Requires
                                                    : ConstraintKind::Excludes;
      shift();
    } else {
      fail("expected 'requires' or 'excludes'", "'requires' or 'excludes'");
      return;
    }
    constraint.to = expect_name("feature name");
    constraint_spans_.push_back({from_span, previous_span_});
    model.constraints.push_back(std::move(constraint));
  }

  // Duplicate names and unknown constraint endpoints need the whole tree, so
  // they are checked after parsing, with the spans recorded along the way.
  void check_semantics(const FeatureModel& model) {
    std::set<std::string> seen;
    std::unordered_map<std::string, std::string> normalized_owner;
    for (const auto& [name, span] : name_spans_) {
      if (!seen.insert(name).second) {
        fail_at(span, "duplicate feature name '" + name + "'", std::nullopt,
                ParseErrorKind::Semantic);
        continue;
      }
      auto [it, fresh] = normalized_owner.emplace(normalize_term(name), name);
      if (!fresh)
        fail_at(span,
                "feature name '" + name + "' duplicates '" + it->second +
                    "' under normalization",
                std::nullopt, ParseErrorKind::Semantic);
    }
    for (std::size_t i = 0; i < model.constraints.size(); ++i) {
      const auto& constraint = model.constraints[i];
      const auto& [from_span, to_span] = constraint_spans_[i];
      if (!seen.count(constraint.from))
        fail_at(from_span, "constraint references unknown feature '" + constraint.from + "'",
                std::nullopt, ParseErrorKind::Semantic);
      if (!seen.count(constraint.to))
        fail_at(to_span, "constraint references unknown feature '" + constraint.to + "'",
                std::nullopt, ParseErrorKind::Semantic);
      if (constraint.from == constraint.to)
        fail_at(to_span, "constraint relates feature '" + constraint.from + "' to itself",
                std::nullopt, ParseErrorKind::Semantic);
    }
  }

  std::string expect_name(const std::string& what) {
    if (current_.kind == TokenKind::Name && !keywords().count(current_.text)) {
      std::string name = current_.text;
      previous_span_ = current_.span;
      shift();
      return name;
    }
    if (current_.kind == TokenKind::Name)
      fail("'" + current_.text + "' is a reserved word, expected " + what, what);
    else
      fail("expected " + what, what);
    previous_span_ = current_.span;
    return {};
  }

  void expect_keyword(const std::string& word) {
    if (current_.kind == TokenKind::Name && current_.text == word) {
      shift();
      return;
    }
    fail("expected '" + word + "'", "'" + word + "'");
  }

  void fail(const std::string& message, std::optional<std::string> expected,
            ParseErrorKind kind = ParseErrorKind::Syntax) {
    fail_at(current_.span, message, std::move(expected), kind);
  }

  void fail_at(SourceSpan span, const std::string& message,
               std::optional<std::string> expected,
               ParseErrorKind kind = ParseErrorKind::Syntax) {
    errors_.push_back({span, message, std::move(expected), kind});
  }

  void shift() { current_ = lexer_.next(errors_); }

  Lexer lexer_;
  Token current_;
  SourceSpan previous_span_;
  std::vector<ParseError> errors_;
  std::vector<std::pair<std::string, SourceSpan>> name_spans_;
  std::vector<std::pair<SourceSpan, SourceSpan>> constraint_spans_;
};

void print_feature(const Feature& feature, int depth, std::string& out);

void print_block_items(const Feature& feature, int depth, std::string& out) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  for (const auto& child : feature.solitary_children) {
    out += indent;
    out += child.kind == ChildKind::Mandatory ? "mandatory " : "optional ";
    print_feature(child.feature, depth, out);
  }
  for (const auto& group : feature.groups) {
    out += indent;
    out += group.kind == GroupKind::Or ? "or group {\n" : "alternative group {\n";
    for (const auto& member : group.members) {
      out += std::string(static_cast<std::size_t>(depth + 1) * 2, ' ');
      print_feature(member, depth + 1, out);
    }
    out += indent;
    out += "}\n";
  }
}

void print_feature(const Feature& feature, int depth, std::string& out) {
  out += feature.name;
  if (feature.solitary_children.empty() && feature.groups.empty()) {
    out += "\n";
    return;
  }
  out += " {\n";
  print_block_items(feature, depth + 1, out);
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
  out += "}\n";
}

}  // namespace

ParseResult parse(std::string_view text) { return Parser(text).run(); }

std::string serialize(const FeatureModel& model) {
  std::string out = "model \"" + model.name + "\"\n";
  out += "feature ";
  print_feature(model.root, 0, out);

  auto constraints = model.constraints;
  std::sort(constraints.begin(), constraints.end(),
            [](const CrossTreeConstraint& a, const CrossTreeConstraint& b) {
              auto keyword = [](ConstraintKind k) {
                return k == ConstraintKind::Excludes ? "excludes" : "requires";
              };
              return std::tuple(std::string(keyword(a.kind)), a.from, a.to) <
                     std::tuple(std::string(keyword(b.kind)), b.from, b.to);
            });
  for (const auto& constraint : constraints) {
    out += "constraint " + constraint.from +
           (constraint.kind == ConstraintKind::Requires ? " requires " : " excludes ") +
           constraint.to + "\n";
  }
  return out;
}

}  // namespace fedont
