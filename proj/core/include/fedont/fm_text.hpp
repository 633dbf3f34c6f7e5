#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedont/feature_model.hpp"

namespace fedont {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class ParseErrorKind { Lexical, Syntax, Semantic };

struct ParseError {
  SourceSpan span;
  std::string message;
  std::optional<std::string> expected;
  ParseErrorKind kind = ParseErrorKind::Syntax;
};

struct ParseResult {
  std::optional<FeatureModel> model;
  std::vector<ParseError> errors;

  bool ok() const { return model.has_value() && errors.empty(); }
};

/// Parses the feature-model DSL:
///
///   model       := "model" STRING featuredef constraint*
///   featuredef  := "feature" NAME block?
///   block       := "{" item* "}"
///   item        := ("mandatory" | "optional") NAME block?
///                | ("or" | "alternative") "group" "{" member+ "}"
///   member      := NAME block?
///   constraint  := "constraint" NAME ("requires" | "excludes") NAME
///   NAME        := [A-Za-z][A-Za-z0-9_]*      line comments start with "#"
///
/// Keywords are reserved and cannot be used as feature names. On success the
/// returned model passes validate(); lexical, syntax, and semantic problems
/// (duplicate names, group arity, unknown constraint endpoints) are all
/// reported as ParseErrors with accurate spans.
ParseResult parse(std::string_view text);

/// Canonical printer: two-space indentation, solitary children before groups
/// in source order, constraints last sorted by (kind, from, to), LF endings,
/// trailing newline, no tabs. parse(serialize(m)) is structurally equal to m
/// and serialize is idempotent on its own output.
std::string serialize(const FeatureModel& model);

}  // namespace fedont
