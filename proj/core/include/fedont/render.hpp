#pragma once

#include <string>

#include "fedont/federation.hpp"

namespace fedont {

/// Deterministic class-diagram text: one "class <qualified name>" line per
/// class (federation first, then tools sorted by id, classes in declaration
/// order), then one "<tool class> --|> <federation class> <<kind>>" line per
/// link in link order.
std::string to_uml(const FederationResult& result);

/// Markdown documentation: purpose and scope, the federation class table,
/// per-tool ontology summaries, the link table, and warnings.
std::string to_docs(const FederationResult& result);

}  // namespace fedont
