#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedont/ontology.hpp"

namespace fedont {

/// OWL 2 functional-style syntax, restricted to the propositionally closed
/// subset. Bit-exact: a Prefix header per namespace (own prefix first, bound
/// to urn:fedont:PREFIX#), one Declaration per class in declaration order,
/// axioms in stored order, LF endings, no trailing whitespace.
std::string to_owl(const Ontology& onto);

struct OwlParseError {
  int line = 1;
  int column = 1;
  std::string message;
};

struct OwlParseResult {
  std::optional<Ontology> ontology;
  std::vector<OwlParseError> errors;

  bool ok() const { return ontology.has_value() && errors.empty(); }
};

/// Inverse of to_owl on its image. Constructs outside the supported subset
/// (roles, individuals, restrictions, datatypes) are rejected with a
/// positioned error naming the construct.
OwlParseResult parse_owl(std::string_view text);

}  // namespace fedont
