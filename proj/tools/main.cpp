#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fedont/analysis.hpp"
#include "fedont/errors.hpp"
#include "fedont/federation.hpp"
#include "fedont/fm_text.hpp"
#include "fedont/owl_text.hpp"
#include "fedont/render.hpp"
#include "fedont/workspace.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fedont;

// 0 success, 1 domain failure, 2 usage or input-format error.
constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsageError = 2;

struct CommandError {
  int code;
};

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw CommandError{code};
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kUsageError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_or_die(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kUsageError, "cannot write '" + path + "'");
  out << content;
  if (!out) die(kUsageError, "write to '" + path + "' failed");
}

void print_parse_errors(const std::string& path, const std::vector<ParseError>& errors) {
  for (const auto& error : errors)
    std::cerr << path << ":" << error.span.line << ":" << error.span.column
              << ": error: " << error.message << "\n";
}

// Parses a model file; lexical/syntax problems exit 2, semantic ones exit 1.
FeatureModel load_model(const std::string& path) {
  auto result = parse(read_file_or_die(path));
  if (result.ok()) return std::move(*result.model);
  print_parse_errors(path, result.errors);
  bool structural = false;
  for (const auto& error : result.errors)
    if (error.kind != ParseErrorKind::Semantic) structural = true;
  throw CommandError{structural ? kUsageError : kDomainFailure};
}

Ontology load_ontology(const std::string& path) {
  auto result = parse_owl(read_file_or_die(path));
  if (result.ok()) return std::move(*result.ontology);
  for (const auto& error : result.errors)
    std::cerr << path << ":" << error.line << ":" << error.column
              << ": error: " << error.message << "\n";
  throw CommandError{kUsageError};
}

FederationResult load_workspace_or_die(const std::string& path) {
  try {
    return load_workspace(path);
  } catch (const WorkspaceError& e) {
    die(kUsageError, e.what());
  }
}

int feature_budget() {
  const char* raw = std::getenv("FEDONT_FEATURE_BUDGET");
  if (!raw || !*raw) return kDefaultFeatureBudget;
  try {
    std::size_t used = 0;
    int value = std::stoi(raw, &used);
    if (used != std::string(raw).size() || value <= 0)
      throw std::invalid_argument("not a positive integer");
    return value;
  } catch (const std::exception&) {
    die(kUsageError, std::string("FEDONT_FEATURE_BUDGET must be a positive integer, got '") +
                         raw + "'");
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& model_path) {
  auto text = read_file_or_die(model_path);
  auto result = parse(text);
  if (result.ok()) return kOk;
  print_parse_errors(model_path, result.errors);
  for (const auto& error : result.errors)
    if (error.kind != ParseErrorKind::Semantic) return kUsageError;
  return kDomainFailure;
}

struct AnalyzeRequest {
  bool count = false;
  std::optional<std::uint64_t> list_limit;
  bool dead = false;
  bool core = false;
};

int cmd_analyze(const std::string& model_path, const AnalyzeRequest& request) {
  auto model = load_model(model_path);
  try {
    if (request.count) std::cout << count_configurations(model, feature_budget()) << "\n";
    if (request.list_limit) {
      auto result = enumerate_configurations(model, *request.list_limit);
      for (const auto& configuration : result.configurations) {
        std::vector<std::string> names(configuration.selected.begin(),
                                       configuration.selected.end());
        std::cout << join(names, ",") << "\n";
      }
    }
    if (request.dead)
      for (const auto& name : dead_features(model)) std::cout << name << "\n";
    if (request.core)
      for (const auto& name : core_features(model)) std::cout << name << "\n";
  } catch (const DomainError& e) {
    die(kDomainFailure, e.what());
  }
  return kOk;
}

int cmd_fm2onto(const std::string& model_path, const std::string& prefix,
                const std::string& out_path) {
  auto model = load_model(model_path);
  try {
    write_file_or_die(out_path, to_owl(fm_to_ontology(model, prefix)));
  } catch (const DomainError& e) {
    die(kUsageError, e.what());
  }
  return kOk;
}

struct ReasonRequest {
  bool consistent = false;
  std::string sat_class;
  std::vector<std::string> subsumes;
  bool classify_all = false;
};

void print_hierarchy(const Hierarchy& hierarchy) {
  std::vector<std::vector<std::size_t>> children(hierarchy.nodes.size());
  std::vector<bool> has_parent(hierarchy.nodes.size(), false);
  for (const auto& [child, parent] : hierarchy.edges) {
    children[parent].push_back(child);
    has_parent[child] = true;
  }
  std::function<void(std::size_t, int)> print_node = [&](std::size_t node, int depth) {
    std::cout << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    std::cout << join(hierarchy.nodes[node], " ≡ ") << "\n";
    for (std::size_t child : children[node]) print_node(child, depth + 1);
  };
  for (std::size_t node = 0; node < hierarchy.nodes.size(); ++node)
    if (!has_parent[node]) print_node(node, 0);
  std::cout << "unsatisfiable:";
  for (const auto& name : hierarchy.unsatisfiable) std::cout << " " << name;
  std::cout << "\n";
}

int cmd_reason(const std::string& onto_path, const ReasonRequest& request) {
  auto onto = load_ontology(onto_path);
  auto resolve_or_die = [&](const std::string& name) {
    if (!onto.is_declared(name))
      die(kUsageError, "class '" + name + "' is not declared in " + onto_path);
    return ClassExpr::named(onto.qualify(name));
  };
  auto answer = [](bool value) {
    std::cout << (value ? "true" : "false") << "\n";
    return value ? kOk : kDomainFailure;
  };
  if (request.consistent) return answer(is_consistent(onto));
  if (!request.sat_class.empty())
    return answer(is_satisfiable(onto, resolve_or_die(request.sat_class)));
  if (!request.subsumes.empty())
    return answer(is_subsumed(onto, resolve_or_die(request.subsumes[0]),
                              resolve_or_die(request.subsumes[1])));
  print_hierarchy(classify(onto));
  return kOk;
}

struct FederateRequest {
  std::vector<std::string> model_paths;
  std::string ids;
  std::string out_dir;
  bool fuzzy = false;
  std::string synonyms_path;
  std::string purpose;
  std::string scope;
  bool equivalence_on_exact = false;
};

SynonymTable load_synonyms(const std::string& path) {
  SynonymTable table;
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(read_file_or_die(path));
  } catch (const nlohmann::json::exception& e) {
    die(kUsageError, path + ": " + e.what());
  }
  if (!parsed.is_object()) die(kUsageError, path + ": expected a JSON object");
  for (const auto& [key, value] : parsed.items()) {
    if (!value.is_string()) die(kUsageError, path + ": synonym values must be strings");
    table[key] = value.get<std::string>();
  }
  return table;
}

void print_summary(const FederationResult& result) {
  std::cout << "federation classes: " << result.federation.declared_classes().size() << "\n";
  std::cout << "links: " << result.links.size() << "\n";
  std::cout << "warnings: " << result.warnings.size() << "\n";
  for (const auto& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
}

int cmd_federate(const FederateRequest& request) {
  std::vector<std::string> ids;
  std::stringstream stream(request.ids);
  std::string id;
  while (std::getline(stream, id, ',')) ids.push_back(id);
  if (ids.size() != request.model_paths.size())
    die(kUsageError, "--ids lists " + std::to_string(ids.size()) + " ids for " +
                         std::to_string(request.model_paths.size()) + " models");

  FederationOptions options;
  options.fuzzy = request.fuzzy;
  options.purpose = request.purpose;
  options.scope = request.scope;
  options.equivalence_on_exact = request.equivalence_on_exact;
  if (!request.synonyms_path.empty()) options.synonyms = load_synonyms(request.synonyms_path);

  std::vector<std::pair<std::string, FeatureModel>> models;
  for (std::size_t i = 0; i < ids.size(); ++i)
    models.emplace_back(ids[i], load_model(request.model_paths[i]));

  try {
    auto result = build_federation(models, options);
    save_workspace(result, request.out_dir);
    print_summary(result);
  } catch (const DomainError& e) {
    die(kUsageError, e.what());
  } catch (const WorkspaceError& e) {
    die(kUsageError, e.what());
  }
  return kOk;
}

int cmd_extend(const std::string& workspace_dir, const std::string& model_path,
               const std::string& tool_id) {
  auto workspace = load_workspace_or_die(workspace_dir);
  auto model = load_model(model_path);
  try {
    auto extended = extend_federation(workspace, tool_id, model);
    save_workspace(extended, workspace_dir);
    std::cout << "+"
              << extended.federation.declared_classes().size() -
                     workspace.federation.declared_classes().size()
              << " classes, +" << extended.links.size() - workspace.links.size()
              << " links\n";
    for (const auto& warning : extended.warnings)
      std::cerr << "warning: " << warning << "\n";
  } catch (const DomainError& e) {
    die(kUsageError, e.what());
  } catch (const WorkspaceError& e) {
    die(kUsageError, e.what());
  }
  return kOk;
}

int cmd_remove_tool(const std::string& workspace_dir, const std::string& tool_id) {
  auto workspace = load_workspace_or_die(workspace_dir);
  try {
    auto reduced = remove_tool(workspace, tool_id);
    save_workspace(reduced, workspace_dir);
    std::cout << "-"
              << workspace.federation.declared_classes().size() -
                     reduced.federation.declared_classes().size()
              << " classes, -" << workspace.links.size() - reduced.links.size() << " links\n";
    for (const auto& warning : reduced.warnings)
      std::cerr << "warning: " << warning << "\n";
  } catch (const DomainError& e) {
    die(kUsageError, e.what());
  } catch (const WorkspaceError& e) {
    die(kUsageError, e.what());
  }
  return kOk;
}

int cmd_export(const std::string& workspace_dir, const std::string& docs_path,
               const std::string& uml_path) {
  auto workspace = load_workspace_or_die(workspace_dir);
  if (!docs_path.empty()) write_file_or_die(docs_path, to_docs(workspace));
  if (!uml_path.empty()) write_file_or_die(uml_path, to_uml(workspace));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"feature-model federation toolkit"};
  app.require_subcommand(1);

  std::string model_path, onto_path, workspace_dir, out_path, prefix, tool_id;
  AnalyzeRequest analyze_request;
  std::uint64_t list_limit = 0;
  ReasonRequest reason_request;
  FederateRequest federate_request;
  std::string docs_path, uml_path;

  auto* validate_cmd = app.add_subcommand("validate", "check a feature model");
  validate_cmd->add_option("model", model_path, "feature model (.fml)")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze feature combinations");
  analyze_cmd->add_option("model", model_path, "feature model (.fml)")->required();
  analyze_cmd->add_flag("--count", analyze_request.count, "print the exact configuration count");
  auto* list_option = analyze_cmd->add_option("--list", list_limit,
                                              "print up to N configurations");
  list_option->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--dead", analyze_request.dead, "print dead features");
  analyze_cmd->add_flag("--core", analyze_request.core, "print core features");

  auto* fm2onto_cmd = app.add_subcommand("fm2onto", "map a feature model to an ontology");
  fm2onto_cmd->add_option("model", model_path, "feature model (.fml)")->required();
  fm2onto_cmd->add_option("--prefix", prefix, "ontology prefix")->required();
  fm2onto_cmd->add_option("-o,--output", out_path, "output .ofn path")->required();

  auto* reason_cmd = app.add_subcommand("reason", "run reasoner services on an ontology");
  reason_cmd->add_option("ontology", onto_path, "ontology (.ofn)")->required();
  reason_cmd->add_flag("--consistent", reason_request.consistent,
                       "check axiom consistency");
  reason_cmd->add_option("--sat", reason_request.sat_class, "class satisfiability");
  reason_cmd->add_option("--subsumes", reason_request.subsumes, "SUB SUP subsumption")
      ->expected(2);
  reason_cmd->add_flag("--classify", reason_request.classify_all,
                       "print the inferred hierarchy");

  auto* federate_cmd = app.add_subcommand("federate", "build a federation workspace");
  federate_cmd->add_option("models", federate_request.model_paths, "feature models (.fml)")
      ->required()
      ->expected(-2);
  federate_cmd->add_option("--ids", federate_request.ids, "comma-separated tool ids")
      ->required();
  federate_cmd->add_option("-o,--output", federate_request.out_dir, "workspace directory")
      ->required();
  federate_cmd->add_flag("--fuzzy", federate_request.fuzzy,
                         "also match terms at edit distance 1");
  federate_cmd->add_option("--synonyms", federate_request.synonyms_path,
                           "synonym table (.syn.json)");
  federate_cmd->add_option("--purpose", federate_request.purpose, "manifest purpose");
  federate_cmd->add_option("--scope", federate_request.scope, "manifest scope");
  federate_cmd->add_flag("--equivalence-on-exact", federate_request.equivalence_on_exact,
                         "emit equivalence links when raw names agree everywhere");

  auto* extend_cmd = app.add_subcommand("extend", "add a tool to a workspace");
  extend_cmd->add_option("workspace", workspace_dir, "workspace directory")->required();
  extend_cmd->add_option("model", model_path, "feature model (.fml)")->required();
  extend_cmd->add_option("--id", tool_id, "tool id")->required();

  auto* remove_cmd = app.add_subcommand("remove-tool", "remove a tool from a workspace");
  remove_cmd->add_option("workspace", workspace_dir, "workspace directory")->required();
  remove_cmd->add_option("--id", tool_id, "tool id")->required();

  auto* export_cmd = app.add_subcommand("export", "export documentation or a class diagram");
  export_cmd->add_option("workspace", workspace_dir, "workspace directory")->required();
  export_cmd->add_option("--docs", docs_path, "write Markdown documentation");
  export_cmd->add_option("--uml", uml_path, "write class-diagram text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(model_path);
    if (analyze_cmd->parsed()) {
      if (list_option->count() > 0) analyze_request.list_limit = list_limit;
      return cmd_analyze(model_path, analyze_request);
    }
    if (fm2onto_cmd->parsed()) return cmd_fm2onto(model_path, prefix, out_path);
    if (reason_cmd->parsed()) {
      int modes = (reason_request.consistent ? 1 : 0) +
                  (!reason_request.sat_class.empty() ? 1 : 0) +
                  (!reason_request.subsumes.empty() ? 1 : 0) +
                  (reason_request.classify_all ? 1 : 0);
      if (modes != 1)
        die(kUsageError,
            "reason needs exactly one of --consistent, --sat, --subsumes, --classify");
      return cmd_reason(onto_path, reason_request);
    }
    if (federate_cmd->parsed()) return cmd_federate(federate_request);
    if (extend_cmd->parsed()) return cmd_extend(workspace_dir, model_path, tool_id);
    if (remove_cmd->parsed()) return cmd_remove_tool(workspace_dir, tool_id);
    if (export_cmd->parsed()) {
      if (docs_path.empty() == uml_path.empty())
        die(kUsageError, "export needs exactly one of --docs or --uml");
      return cmd_export(workspace_dir, docs_path, uml_path);
    }
  } catch (const CommandError& e) {
    return e.code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  } catch (const WorkspaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
