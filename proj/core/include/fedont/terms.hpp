#pragma once

#include <map>
#include <string>
#include <string_view>

namespace fedont {

/// Maps normalized forms to replacement normalized forms; applied once after
/// base normalization.
using SynonymTable = std::map<std::string, std::string>;

/// Lowercases and strips '_', '-', and spaces. "Application_Framework"
/// becomes "applicationframework".
std::string normalize_term(std::string_view raw);

/// Base normalization followed by one exact synonym lookup.
std::string normalize_term(std::string_view raw, const SynonymTable& synonyms);

/// Levenshtein edit distance; used by the fuzzy matcher.
std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace fedont
