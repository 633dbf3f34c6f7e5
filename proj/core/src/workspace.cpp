#include "fedont/workspace.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "fedont/errors.hpp"
#include "fedont/fm_text.hpp"
#include "fedont/owl_text.hpp"

#include "json.hpp"

namespace fedont {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WorkspaceError(path.string(), "cannot open for writing");
  out << content;
  if (!out) throw WorkspaceError(path.string(), "write failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WorkspaceError(path.string(), "missing or unreadable");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string kind_string(LinkKind kind) {
  return kind == LinkKind::Subsumes ? "subsumes" : "equivalent";
}

LinkKind kind_from_string(const std::string& text, const fs::path& path) {
  if (text == "subsumes") return LinkKind::Subsumes;
  if (text == "equivalent") return LinkKind::Equivalent;
  throw WorkspaceError(path.string(), "unknown link kind '" + text + "'");
}

fs::path unique_sibling(const fs::path& dir, const std::string& tag) {
  std::mt19937_64 rng(std::random_device{}());
  std::uniform_int_distribution<std::uint64_t> dist;
  return dir.parent_path() /
         (dir.filename().string() + "." + tag + "-" + std::to_string(dist(rng)));
}

void write_workspace_content(const FederationResult& result, const fs::path& dir) {
  fs::create_directories(dir / "tools");

  ordered_json manifest;
  manifest["format_version"] = kWorkspaceFormatVersion;
  manifest["purpose"] = result.manifest.purpose;
  manifest["scope"] = result.manifest.scope;
  manifest["tool_ids"] = result.manifest.tool_ids;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  write_file(dir / "federation.ofn", to_owl(result.federation));

  ordered_json links = ordered_json::array();
  for (const auto& link : result.links) {
    ordered_json entry;
    entry["federation_class"] = link.federation_class;
    entry["tool_id"] = link.tool_id;
    entry["tool_class"] = link.tool_class;
    entry["kind"] = kind_string(link.kind);
    links.push_back(std::move(entry));
  }
  write_file(dir / "links.json", links.dump(2) + "\n");

  for (const auto& [tool_id, onto] : result.tools)
    write_file(dir / "tools" / (tool_id + ".ofn"), to_owl(onto));
  for (const auto& [tool_id, model] : result.models)
    write_file(dir / "tools" / (tool_id + ".fml"), serialize(model));
}

}  // namespace

void save_workspace(const FederationResult& result, const fs::path& dir) {
  // Stage into a sibling directory, then swap: the target is never observed
  // half-written.
  fs::path staging = unique_sibling(dir, "tmp");
  try {
    write_workspace_content(result, staging);
    if (fs::exists(dir)) {
      fs::path retired = unique_sibling(dir, "old");
      fs::rename(dir, retired);
      fs::rename(staging, dir);
      fs::remove_all(retired);
    } else {
      fs::rename(staging, dir);
    }
  } catch (const fs::filesystem_error& e) {
    std::error_code ignore;
    fs::remove_all(staging, ignore);
    throw WorkspaceError(dir.string(), e.what());
  } catch (...) {
    std::error_code ignore;
    fs::remove_all(staging, ignore);
    throw;
  }
}

FederationResult load_workspace(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw WorkspaceError(dir.string(), "not a workspace directory");

  fs::path manifest_path = dir / "manifest.json";
  ordered_json manifest;
  try {
    manifest = ordered_json::parse(read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw WorkspaceError(manifest_path.string(), e.what());
  }
  if (!manifest.is_object() || !manifest.contains("format_version"))
    throw WorkspaceError(manifest_path.string(), "missing format_version");
  if (manifest["format_version"] != kWorkspaceFormatVersion)
    throw WorkspaceError(manifest_path.string(),
                         "unsupported format_version " + manifest["format_version"].dump() +
                             " (expected " + std::to_string(kWorkspaceFormatVersion) + ")");
  for (const char* field : {"purpose", "scope", "tool_ids"})
    if (!manifest.contains(field))
      throw WorkspaceError(manifest_path.string(), std::string("missing ") + field);

  FederationResult result;
  result.manifest.purpose = manifest["purpose"].get<std::string>();
  result.manifest.scope = manifest["scope"].get<std::string>();
  for (const auto& id : manifest["tool_ids"])
    result.manifest.tool_ids.push_back(id.get<std::string>());

  fs::path federation_path = dir / "federation.ofn";
  auto federation = parse_owl(read_file(federation_path));
  if (!federation.ok()) {
    const auto& error = federation.errors.front();
    throw WorkspaceError(federation_path.string(),
                         "line " + std::to_string(error.line) + ", column " +
                             std::to_string(error.column) + ": " + error.message);
  }
  result.federation = std::move(*federation.ontology);

  std::set<std::string> ids(result.manifest.tool_ids.begin(), result.manifest.tool_ids.end());
  for (const auto& tool_id : result.manifest.tool_ids) {
    fs::path onto_path = dir / "tools" / (tool_id + ".ofn");
    auto onto = parse_owl(read_file(onto_path));
    if (!onto.ok()) {
      const auto& error = onto.errors.front();
      throw WorkspaceError(onto_path.string(), "line " + std::to_string(error.line) +
                                                   ", column " + std::to_string(error.column) +
                                                   ": " + error.message);
    }
    result.tools.emplace(tool_id, std::move(*onto.ontology));

    fs::path model_path = dir / "tools" / (tool_id + ".fml");
    auto model = parse(read_file(model_path));
    if (!model.ok()) {
      const auto& error = model.errors.front();
      throw WorkspaceError(model_path.string(),
                           "line " + std::to_string(error.span.line) + ", column " +
                               std::to_string(error.span.column) + ": " + error.message);
    }
    result.models.emplace(tool_id, std::move(*model.model));
  }

  // The manifest must list exactly the tools present on disk.
  for (const auto& entry : fs::directory_iterator(dir / "tools")) {
    std::string stem = entry.path().stem().string();
    std::string extension = entry.path().extension().string();
    if (extension != ".ofn" && extension != ".fml")
      throw WorkspaceError(entry.path().string(), "unexpected file in tools/");
    if (!ids.count(stem))
      throw WorkspaceError(entry.path().string(), "tool not listed in manifest");
  }

  fs::path links_path = dir / "links.json";
  ordered_json links;
  try {
    links = ordered_json::parse(read_file(links_path));
  } catch (const nlohmann::json::exception& e) {
    throw WorkspaceError(links_path.string(), e.what());
  }
  if (!links.is_array()) throw WorkspaceError(links_path.string(), "expected a JSON array");
  for (const auto& entry : links) {
    for (const char* field : {"federation_class", "tool_id", "tool_class", "kind"})
      if (!entry.contains(field))
        throw WorkspaceError(links_path.string(), std::string("link missing ") + field);
    FederationLink link;
    link.federation_class = entry["federation_class"].get<std::string>();
    link.tool_id = entry["tool_id"].get<std::string>();
    link.tool_class = entry["tool_class"].get<std::string>();
    link.kind = kind_from_string(entry["kind"].get<std::string>(), links_path);
    if (!result.federation.is_declared(link.federation_class))
      throw WorkspaceError(links_path.string(),
                           "link endpoint '" + link.federation_class + "' is not declared");
    auto tool = result.tools.find(link.tool_id);
    if (tool == result.tools.end())
      throw WorkspaceError(links_path.string(), "link tool '" + link.tool_id + "' is unknown");
    if (!tool->second.is_declared(link.tool_class))
      throw WorkspaceError(links_path.string(),
                           "link endpoint '" + link.tool_class + "' is not declared");
    result.links.push_back(std::move(link));
  }
  return result;
}

}  // namespace fedont
