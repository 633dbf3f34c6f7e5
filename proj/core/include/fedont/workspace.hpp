#pragma once

#include <filesystem>

#include "fedont/federation.hpp"

namespace fedont {

inline constexpr int kWorkspaceFormatVersion = 1;

/// Persists a federation to `dir`:
///   manifest.json   purpose, scope, tool_ids, format_version
///   federation.ofn  the federation ontology
///   links.json      array of {federation_class, tool_id, tool_class, kind}
///   tools/<id>.ofn  one ontology per tool
///   tools/<id>.fml  the tool's source feature model, canonical form
/// The directory is written atomically: content goes to a temporary sibling
/// that is renamed over the target, so a killed process never leaves a
/// half-written workspace.
void save_workspace(const FederationResult& result, const std::filesystem::path& dir);

/// Loads a workspace saved by save_workspace. Missing or corrupt files and
/// format_version mismatches raise WorkspaceError naming the offending path;
/// load(save(r)) is structurally equal to r.
FederationResult load_workspace(const std::filesystem::path& dir);

}  // namespace fedont
