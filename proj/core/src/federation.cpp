#include "fedont/federation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>

#include "fedont/errors.hpp"

namespace fedont {

Ontology fm_to_ontology(const FeatureModel& model, const std::string& prefix) {
  if (!is_valid_model(model))
    throw DomainError("invalid feature model '" + model.name + "'");
  if (prefix == "fed")
    throw DomainError("prefix 'fed' is reserved for the federation ontology");
  Ontology onto(prefix);
  for (const auto& name : canonical_feature_order(model)) onto.declare(name);

  std::function<void(const Feature&)> visit = [&](const Feature& feature) {
    ClassExpr parent = ClassExpr::named(onto.qualify(feature.name));
    for (const auto& child : feature.solitary_children) {
      ClassExpr child_class = ClassExpr::named(onto.qualify(child.feature.name));
      onto.add(Axiom::sub_class_of(child_class, parent));
      if (child.kind == ChildKind::Mandatory)
        onto.add(Axiom::sub_class_of(parent, child_class));
      visit(child.feature);
    }
    for (const auto& group : feature.groups) {
      std::vector<ClassExpr> members;
      members.reserve(group.members.size());
      for (const auto& member : group.members) {
        members.push_back(ClassExpr::named(onto.qualify(member.name)));
        onto.add(Axiom::sub_class_of(members.back(), parent));
      }
      if (group.kind == GroupKind::Alternative)
        onto.add(Axiom::disjoint_classes(members));
      onto.add(Axiom::sub_class_of(parent, ClassExpr::union_of(members)));
      for (const auto& member : group.members) visit(member);
    }
  };
  visit(model.root);

  for (const auto& constraint : model.constraints) {
    ClassExpr from = ClassExpr::named(onto.qualify(constraint.from));
    ClassExpr to = ClassExpr::named(onto.qualify(constraint.to));
    if (constraint.kind == ConstraintKind::Requires)
      onto.add(Axiom::sub_class_of(std::move(from), std::move(to)));
    else
      onto.add(Axiom::disjoint_classes({std::move(from), std::move(to)}));
  }
  return onto;
}

const TermEntry* TermTable::find(const std::string& normalized) const {
  for (const auto& entry : entries)
    if (entry.normalized == normalized) return &entry;
  return nullptr;
}

TermTable extract_terms(const FeatureModel& model, const SynonymTable& synonyms) {
  if (!is_valid_model(model))
    throw DomainError("invalid feature model '" + model.name + "'");
  TermTable table;
  std::vector<std::string> path;
  std::function<void(const Feature&)> visit = [&](const Feature& feature) {
    table.entries.push_back({feature.name, normalize_term(feature.name, synonyms), path});
    path.push_back(feature.name);
    for (const auto& child : feature.solitary_children) visit(child.feature);
    for (const auto& group : feature.groups)
      for (const auto& member : group.members) visit(member);
    path.pop_back();
  };
  visit(model.root);
  return table;
}

std::vector<CommonTerm> common_terms(const TermTable& a, const TermTable& b, bool fuzzy) {
  std::vector<CommonTerm> matches;
  std::set<std::string> forms_in_a, forms_in_b;
  for (const auto& entry : a.entries) forms_in_a.insert(entry.normalized);
  for (const auto& entry : b.entries) forms_in_b.insert(entry.normalized);

  std::set<std::string> exact;
  for (const auto& form : forms_in_a)
    if (forms_in_b.count(form)) exact.insert(form);
  for (const auto& form : exact)
    matches.push_back({form, a.find(form)->raw, b.find(form)->raw, false});

  if (fuzzy) {
    // Unordered candidate pairs at distance 1, taken greedily in sorted
    // order; symmetric in the two tables by construction.
    std::vector<std::pair<std::string, std::string>> candidates;  // (min, max)
    for (const auto& form_a : forms_in_a) {
      if (exact.count(form_a)) continue;
      for (const auto& form_b : forms_in_b) {
        if (exact.count(form_b)) continue;
        if (edit_distance(form_a, form_b) == 1)
          candidates.emplace_back(std::min(form_a, form_b), std::max(form_a, form_b));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    std::set<std::string> used;
    for (const auto& [low, high] : candidates) {
      if (used.count(low) || used.count(high)) continue;
      used.insert(low);
      used.insert(high);
      const std::string& form_a = forms_in_a.count(low) ? low : high;
      const std::string& form_b = form_a == low ? high : low;
      matches.push_back({low, a.find(form_a)->raw, b.find(form_b)->raw, true});
    }
  }

  std::sort(matches.begin(), matches.end(),
            [](const CommonTerm& x, const CommonTerm& y) { return x.normalized < y.normalized; });
  return matches;
}

namespace {

std::string class_name_of(const std::string& key) {
  std::string name = key;
  name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  return name;
}

std::string local_part(const std::string& qualified) {
  auto colon = qualified.find(':');
  return colon == std::string::npos ? qualified : qualified.substr(colon + 1);
}

std::string key_of_class(const std::string& qualified) {
  std::string local = local_part(qualified);
  std::transform(local.begin(), local.end(), local.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return local;
}

// Raw feature name -> normalized form, exactly as the table was built
// (including any synonym substitutions).
std::map<std::string, std::string> form_of_raw(const TermTable& table) {
  std::map<std::string, std::string> forms;
  for (const auto& entry : table.entries) forms.emplace(entry.raw, entry.normalized);
  return forms;
}

// Nearest ancestor of `entry` (walking towards the root) whose normalized
// form maps to a federation term, per `key_of_form`. The entry's own term is
// skipped so a class never becomes its own parent.
std::optional<std::string> nearest_term_ancestor(
    const TermEntry& entry, const std::map<std::string, std::string>& forms,
    const std::function<std::optional<std::string>(const std::string&)>& key_of_form,
    const std::string& own_key) {
  for (auto it = entry.path.rbegin(); it != entry.path.rend(); ++it) {
    auto key = key_of_form(forms.at(*it));
    if (key && *key != own_key) return key;
  }
  return std::nullopt;
}

}  // namespace

AffinityResult build_affinity(const std::vector<CommonTerm>& matches, const TermTable& a,
                              const TermTable& b) {
  // Maps each table's own normalized form to the canonical pair key.
  auto forms_of_a = form_of_raw(a);
  auto forms_of_b = form_of_raw(b);
  std::map<std::string, std::string> key_in_a, key_in_b;
  for (const auto& match : matches) {
    key_in_a[forms_of_a.at(match.raw_in_a)] = match.normalized;
    key_in_b[forms_of_b.at(match.raw_in_b)] = match.normalized;
  }
  auto lookup = [](const std::map<std::string, std::string>& keys) {
    return [&keys](const std::string& form) -> std::optional<std::string> {
      auto it = keys.find(form);
      if (it == keys.end()) return std::nullopt;
      return it->second;
    };
  };

  AffinityResult result;
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& match : matches) {
    const TermEntry* entry_a = a.find(forms_of_a.at(match.raw_in_a));
    const TermEntry* entry_b = b.find(forms_of_b.at(match.raw_in_b));
    auto ancestor_a =
        nearest_term_ancestor(*entry_a, forms_of_a, lookup(key_in_a), match.normalized);
    auto ancestor_b =
        nearest_term_ancestor(*entry_b, forms_of_b, lookup(key_in_b), match.normalized);
    std::string key = "shared";
    if (ancestor_a && ancestor_b && *ancestor_a == *ancestor_b) {
      key = *ancestor_a;
    } else if (ancestor_a && ancestor_b && *ancestor_a != *ancestor_b) {
      result.warnings.push_back("term '" + match.normalized +
                                "' grouped under 'shared': models disagree on its "
                                "ancestor ('" +
                                *ancestor_a + "' vs '" + *ancestor_b + "')");
    }
    groups[key].push_back(match.normalized);
  }
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end());
    result.groups.push_back({key, std::move(members)});
  }
  return result;
}

namespace {

// Union-find over normalized forms; fuzzy matches merge forms into one term.
class FormClasses {
 public:
  void add(const std::string& form) { parent_.emplace(form, form); }

  void unite(const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;  // keep the lexicographically smaller form as root
  }

  std::string find(const std::string& form) const {
    std::string current = form;
    auto it = parent_.find(current);
    while (it != parent_.end() && it->second != current) {
      current = it->second;
      it = parent_.find(current);
    }
    return current;
  }

 private:
  std::map<std::string, std::string> parent_;
};

struct TermSupport {
  std::string key;  // canonical normalized form
  // tool_id -> first matching entry in that tool's table
  std::map<std::string, const TermEntry*> entries;
};

void append_links_for(std::vector<FederationLink>& links, const std::string& fed_class,
                      const TermSupport& term,
                      const std::map<std::string, Ontology>& tools,
                      bool equivalence_on_exact) {
  bool all_raw_equal = true;
  const std::string* first_raw = nullptr;
  for (const auto& [tool_id, entry] : term.entries) {
    if (!first_raw)
      first_raw = &entry->raw;
    else if (*first_raw != entry->raw)
      all_raw_equal = false;
  }
  LinkKind kind = equivalence_on_exact && all_raw_equal ? LinkKind::Equivalent
                                                        : LinkKind::Subsumes;
  for (const auto& [tool_id, entry] : term.entries)
    links.push_back({fed_class, tool_id, tools.at(tool_id).qualify(entry->raw), kind});
}

}  // namespace

FederationResult build_federation(
    const std::vector<std::pair<std::string, FeatureModel>>& models,
    const FederationOptions& options) {
  if (models.size() < 2)
    throw DomainError("a federation needs at least 2 models, got " +
                      std::to_string(models.size()));
  std::set<std::string> ids;
  for (const auto& [tool_id, model] : models) {
    if (!ids.insert(tool_id).second)
      throw DomainError("duplicate tool id '" + tool_id + "'");
  }

  FederationResult result;
  result.manifest.purpose = options.purpose;
  result.manifest.scope = options.scope;

  std::map<std::string, TermTable> tables;
  for (const auto& [tool_id, model] : models) {
    result.tools.emplace(tool_id, fm_to_ontology(model, tool_id));
    result.models.emplace(tool_id, model);
    tables.emplace(tool_id, extract_terms(model, options.synonyms));
  }
  // Sorted so that rebuilds, re-extensions, and input reorderings produce
  // byte-identical manifests.
  for (const auto& [tool_id, onto] : result.tools)
    result.manifest.tool_ids.push_back(tool_id);
  std::map<std::string, std::map<std::string, std::string>> table_forms;
  for (const auto& [tool_id, table] : tables) table_forms.emplace(tool_id, form_of_raw(table));

  // Unify normalized forms across tools; identical forms coincide already,
  // fuzzy pairs are merged pairwise.
  FormClasses classes;
  for (const auto& [tool_id, table] : tables)
    for (const auto& entry : table.entries) classes.add(entry.normalized);
  if (options.fuzzy) {
    for (auto first = tables.begin(); first != tables.end(); ++first) {
      for (auto second = std::next(first); second != tables.end(); ++second) {
        for (const auto& match : common_terms(first->second, second->second, true)) {
          if (!match.fuzzy) continue;
          classes.unite(normalize_term(match.raw_in_a, options.synonyms),
                        normalize_term(match.raw_in_b, options.synonyms));
        }
      }
    }
  }

  // Terms supported by >= 2 tools become federation classes.
  std::map<std::string, TermSupport> support;
  for (const auto& [tool_id, table] : tables) {
    for (const auto& entry : table.entries) {
      std::string key = classes.find(entry.normalized);
      auto& term = support[key];
      term.key = key;
      term.entries.emplace(tool_id, &entry);  // first entry per tool wins
    }
  }
  std::vector<const TermSupport*> federation_terms;
  for (const auto& [key, term] : support)
    if (term.entries.size() >= 2) federation_terms.push_back(&term);

  // Per-term group keys via the affinity rule: every supporting tool must
  // agree on the nearest federated ancestor.
  std::set<std::string> term_keys;
  for (const auto* term : federation_terms) term_keys.insert(term->key);
  auto key_of_form = [&](const std::string& form) -> std::optional<std::string> {
    std::string key = classes.find(form);
    if (term_keys.count(key)) return key;
    return std::nullopt;
  };

  result.federation.declare("Federation");
  std::map<std::string, std::string> parent_of;  // term key -> parent class key or ""
  for (const auto* term : federation_terms) {
    std::set<std::string> candidates;
    bool some_tool_lacks_ancestor = false;
    for (const auto& [tool_id, entry] : term->entries) {
      auto ancestor = nearest_term_ancestor(*entry, table_forms.at(tool_id), key_of_form, term->key);
      if (ancestor)
        candidates.insert(*ancestor);
      else
        some_tool_lacks_ancestor = true;
    }
    if (candidates.size() == 1 && !some_tool_lacks_ancestor) {
      parent_of[term->key] = *candidates.begin();
    } else {
      parent_of[term->key] = "";
      if (candidates.size() >= 2) {
        std::string listing;
        for (const auto& candidate : candidates)
          listing += (listing.empty() ? "'" : " vs '") + candidate + "'";
        result.warnings.push_back("term '" + term->key +
                                  "' grouped under the federation root: tools disagree "
                                  "on its ancestor (" +
                                  listing + ")");
      }
    }
  }

  for (const auto* term : federation_terms) {
    std::string name = class_name_of(term->key);
    if (name == "Federation")
      throw DomainError("term 'federation' collides with the federation root class");
    result.federation.declare(name);
  }
  for (const auto* term : federation_terms) {
    const std::string& parent_key = parent_of.at(term->key);
    std::string parent = parent_key.empty() ? "Federation" : class_name_of(parent_key);
    result.federation.add(Axiom::sub_class_of(ClassExpr::named("fed:" + class_name_of(term->key)),
                                              ClassExpr::named("fed:" + parent)));
  }
  for (const auto* term : federation_terms)
    append_links_for(result.links, "fed:" + class_name_of(term->key), *term, result.tools,
                     options.equivalence_on_exact);
  return result;
}

FederationResult extend_federation(const FederationResult& fed, const std::string& tool_id,
                                   const FeatureModel& model) {
  if (fed.tools.count(tool_id)) throw DomainError("duplicate tool id '" + tool_id + "'");

  FederationResult result = fed;
  result.warnings.clear();
  result.tools.emplace(tool_id, fm_to_ontology(model, tool_id));
  result.models.emplace(tool_id, model);
  result.manifest.tool_ids.push_back(tool_id);
  std::sort(result.manifest.tool_ids.begin(), result.manifest.tool_ids.end());

  // Extension matches on base-normalized names; build-time synonym tables
  // and fuzzy matching are not persisted with the workspace.
  TermTable new_table = extract_terms(model);
  std::map<std::string, TermTable> old_tables;
  for (const auto& [existing_id, existing_model] : fed.models)
    old_tables.emplace(existing_id, extract_terms(existing_model));

  std::set<std::string> existing_keys;
  for (const auto& name : fed.federation.declared_classes())
    if (name != "fed:Federation") existing_keys.insert(key_of_class(name));

  // (i) Terms matching existing federation classes add links.
  for (const auto& name : fed.federation.declared_classes()) {
    if (name == "fed:Federation") continue;
    const TermEntry* entry = new_table.find(key_of_class(name));
    if (entry)
      result.links.push_back(
          {name, tool_id, result.tools.at(tool_id).qualify(entry->raw), LinkKind::Subsumes});
  }

  // (ii) Terms now shared by >= 2 tools spawn new classes.
  std::map<std::string, TermSupport> new_terms;
  for (const auto& entry : new_table.entries) {
    if (existing_keys.count(entry.normalized)) continue;
    TermSupport term;
    term.key = entry.normalized;
    for (const auto& [existing_id, table] : old_tables) {
      const TermEntry* old_entry = table.find(entry.normalized);
      if (old_entry) term.entries.emplace(existing_id, old_entry);
    }
    if (term.entries.empty()) continue;
    term.entries.emplace(tool_id, &entry);
    new_terms.emplace(term.key, std::move(term));
  }

  std::set<std::string> all_keys = existing_keys;
  for (const auto& [key, term] : new_terms) all_keys.insert(key);
  auto key_of_form = [&](const std::string& form) -> std::optional<std::string> {
    if (all_keys.count(form)) return form;
    return std::nullopt;
  };

  for (const auto& [key, term] : new_terms) {
    std::string name = class_name_of(key);
    if (name == "Federation")
      throw DomainError("term 'federation' collides with the federation root class");
    result.federation.declare(name);
  }
  for (const auto& [key, term] : new_terms) {
    std::set<std::string> candidates;
    bool some_tool_lacks_ancestor = false;
    for (const auto& [supporter, entry] : term.entries) {
      const TermTable& table = supporter == tool_id ? new_table : old_tables.at(supporter);
      auto ancestor = nearest_term_ancestor(*entry, form_of_raw(table), key_of_form, key);
      if (ancestor)
        candidates.insert(*ancestor);
      else
        some_tool_lacks_ancestor = true;
    }
    std::string parent = "Federation";
    if (candidates.size() == 1 && !some_tool_lacks_ancestor) {
      parent = class_name_of(*candidates.begin());
    } else if (candidates.size() >= 2) {
      result.warnings.push_back("term '" + key +
                                "' grouped under the federation root: tools disagree on "
                                "its ancestor");
    }
    result.federation.add(Axiom::sub_class_of(ClassExpr::named("fed:" + class_name_of(key)),
                                              ClassExpr::named("fed:" + parent)));
  }
  for (const auto& [key, term] : new_terms)
    append_links_for(result.links, "fed:" + class_name_of(key), term, result.tools, false);
  return result;
}

FederationResult remove_tool(const FederationResult& fed, const std::string& tool_id) {
  if (!fed.tools.count(tool_id)) throw DomainError("unknown tool id '" + tool_id + "'");

  FederationResult result;
  result.manifest.purpose = fed.manifest.purpose;
  result.manifest.scope = fed.manifest.scope;
  for (const auto& id : fed.manifest.tool_ids)
    if (id != tool_id) result.manifest.tool_ids.push_back(id);
  std::sort(result.manifest.tool_ids.begin(), result.manifest.tool_ids.end());
  for (const auto& [id, onto] : fed.tools)
    if (id != tool_id) result.tools.emplace(id, onto);
  for (const auto& [id, model] : fed.models)
    if (id != tool_id) result.models.emplace(id, model);

  std::vector<FederationLink> kept_links;
  for (const auto& link : fed.links)
    if (link.tool_id != tool_id) kept_links.push_back(link);

  // Classes below two supporting links disappear; their children re-parent
  // to the federation root.
  std::set<std::string> removed;
  for (const auto& name : fed.federation.declared_classes()) {
    if (name == "fed:Federation") continue;
    std::size_t supporters = 0;
    for (const auto& link : kept_links)
      if (link.federation_class == name) ++supporters;
    if (supporters < 2) removed.insert(name);
  }

  result.federation = Ontology("fed");
  for (const auto& name : fed.federation.declared_classes())
    if (!removed.count(name)) result.federation.declare(name);
  auto references_removed = [&](const ClassExpr& expr) {
    std::function<bool(const ClassExpr&)> walk = [&](const ClassExpr& e) {
      if (e.kind() == ClassExpr::Kind::Named) return removed.count(e.name()) > 0;
      for (const auto& operand : e.operands())
        if (walk(operand)) return true;
      return false;
    };
    return walk(expr);
  };
  for (const auto& axiom : fed.federation.axioms()) {
    bool plain_subclass =
        axiom.kind == Axiom::Kind::SubClassOf &&
        axiom.exprs[0].kind() == ClassExpr::Kind::Named &&
        axiom.exprs[1].kind() == ClassExpr::Kind::Named;
    if (plain_subclass) {
      const std::string& subject = axiom.exprs[0].name();
      if (removed.count(subject)) continue;
      std::string parent = axiom.exprs[1].name();
      if (removed.count(parent)) parent = "fed:Federation";
      result.federation.add(
          Axiom::sub_class_of(ClassExpr::named(subject), ClassExpr::named(parent)));
      continue;
    }
    // Built federations only contain named subclass axioms; anything else
    // (hand-edited workspaces) is kept unless it mentions a removed class.
    bool drops = false;
    for (const auto& expr : axiom.exprs) drops = drops || references_removed(expr);
    if (!drops) result.federation.add(axiom);
  }
  for (const auto& link : kept_links)
    if (!removed.count(link.federation_class)) result.links.push_back(link);

  if (result.tools.size() < 2)
    result.warnings.push_back("federation is left with " +
                              std::to_string(result.tools.size()) +
                              " tool(s); commonalities need at least two");
  return result;
}

Ontology merged_view(const FederationResult& fed) {
  Ontology merged = fed.federation;
  for (const auto& [tool_id, onto] : fed.tools) merged = merge(merged, onto);
  for (const auto& link : fed.links) {
    ClassExpr tool_class = ClassExpr::named(link.tool_class);
    ClassExpr fed_class = ClassExpr::named(link.federation_class);
    if (link.kind == LinkKind::Subsumes)
      merged.add(Axiom::sub_class_of(std::move(tool_class), std::move(fed_class)));
    else
      merged.add(Axiom::equivalent_classes({std::move(tool_class), std::move(fed_class)}));
  }
  return merged;
}

bool structurally_equal(const FederationResult& a, const FederationResult& b) {
  return a.federation == b.federation && a.tools == b.tools && a.models == b.models &&
         a.links == b.links && a.manifest == b.manifest;
}

}  // namespace fedont
