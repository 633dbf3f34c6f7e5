#include "fedont/render.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fedont {

namespace {

const char* kind_label(LinkKind kind) {
  return kind == LinkKind::Subsumes ? "subsumes" : "equivalent";
}

std::string join(const std::vector<std::string>& parts, const std::string& separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string to_uml(const FederationResult& result) {
  std::string out;
  for (const auto& name : result.federation.declared_classes())
    out += "class " + name + "\n";
  for (const auto& [tool_id, onto] : result.tools)  // std::map: sorted by id
    for (const auto& name : onto.declared_classes()) out += "class " + name + "\n";
  for (const auto& link : result.links)
    out += link.tool_class + " --|> " + link.federation_class + " <<" +
           kind_label(link.kind) + ">>\n";
  return out;
}

std::string to_docs(const FederationResult& result) {
  std::string out = "# Federation Documentation\n\n";

  out += "## Purpose & Scope\n\n";
  out += "- Purpose: " +
         (result.manifest.purpose.empty() ? std::string("(not specified)")
                                          : result.manifest.purpose) +
         "\n";
  out += "- Scope: " +
         (result.manifest.scope.empty() ? std::string("(not specified)")
                                        : result.manifest.scope) +
         "\n";
  out += "- Tools: " + join(result.manifest.tool_ids, ", ") + "\n\n";

  out += "## Federation Classes\n\n";
  // parent and supporting tools per class, from the axioms and the links
  std::map<std::string, std::string> parent_of;
  for (const auto& axiom : result.federation.axioms())
    if (axiom.kind == Axiom::Kind::SubClassOf)
      parent_of[axiom.exprs[0].name()] = axiom.exprs[1].name();
  std::map<std::string, std::set<std::string>> tools_of;
  for (const auto& link : result.links)
    tools_of[link.federation_class].insert(link.tool_id);

  bool any_class = false;
  std::string table;
  for (const auto& name : result.federation.declared_classes()) {
    if (name == "fed:Federation") continue;
    any_class = true;
    std::vector<std::string> supporters(tools_of[name].begin(), tools_of[name].end());
    table += "| " + name + " | " + parent_of[name] + " | " + join(supporters, ", ") + " |\n";
  }
  if (any_class) {
    out += "| Class | Parent | Supporting Tools |\n";
    out += "| --- | --- | --- |\n";
    out += table + "\n";
  } else {
    out += "(no common classes)\n\n";
  }

  out += "## Per-Tool Ontologies\n\n";
  for (const auto& [tool_id, onto] : result.tools) {
    out += "### " + tool_id + "\n\n";
    out += "- Classes: " + std::to_string(onto.declared_classes().size()) + "\n";
    out += "- Axioms: " + std::to_string(onto.axioms().size()) + "\n";
    out += "- Class list: " + join(onto.declared_classes(), ", ") + "\n\n";
  }

  out += "## Links\n\n";
  if (result.links.empty()) {
    out += "(none)\n\n";
  } else {
    out += "| Federation Class | Tool | Tool Class | Kind |\n";
    out += "| --- | --- | --- | --- |\n";
    for (const auto& link : result.links)
      out += "| " + link.federation_class + " | " + link.tool_id + " | " + link.tool_class +
             " | " + kind_label(link.kind) + " |\n";
    out += "\n";
  }

  out += "## Warnings\n\n";
  if (result.warnings.empty()) {
    out += "(none)\n";
  } else {
    for (const auto& warning : result.warnings) out += "- " + warning + "\n";
  }
  return out;
}

}  // namespace fedont
