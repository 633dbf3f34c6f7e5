// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria. `acceptance --criterion N` runs a single criterion.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fedont/analysis.hpp"
#include "fedont/federation.hpp"
#include "fedont/fm_text.hpp"
#include "fedont/owl_text.hpp"
#include "fedont/render.hpp"
#include "fedont/workspace.hpp"
#include "support/test_support.hpp"

namespace fs = std::filesystem;
using namespace fedont;
using namespace fedont::testing;

namespace {

const std::vector<std::string> kFixtureModels = {
    "phone.fml",          "os_alternative.fml", "anomaly.fml",    "unsat.fml",
    "symbian_sample.fml", "android_sample.fml", "bada_sample.fml"};

class Check {
 public:
  void require(bool condition, const std::string& detail) {
    if (!condition) failures_.push_back(detail);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

FeatureModel fixture(const std::string& name) {
  return parse_or_die(read_file(std::string(FEDONT_FIXTURE_DIR) + "/" + name));
}

std::string golden(const std::string& name) {
  return read_file(std::string(FEDONT_GOLDEN_DIR) + "/" + name);
}

FederationResult sample_federation() {
  FederationOptions options;
  options.purpose = "Interoperability of sample mobile operating systems";
  options.scope = "Connectivity feature subset at desk scale";
  return build_federation(
      {{"sym", fixture("symbian_sample.fml")}, {"and", fixture("android_sample.fml")}},
      options);
}

fs::path scratch_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() /
             ("fedont-acceptance-" + tag + "-" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  return dir;
}

std::map<std::string, std::string> workspace_bytes(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file())
      files[fs::relative(entry.path(), dir).string()] = read_file(entry.path().string());
  return files;
}

// Criterion 1 -- or-relation semantics on the connectivity example.
void criterion_1(Check& check) {
  auto model = fixture("phone.fml");
  auto oracle = brute_force_configurations(model);

  auto count = count_configurations(model);
  check.require(count == 8, "count_configurations == 8: got " + std::to_string(count) +
                                " (or groups require at least one selected member when "
                                "the parent is selected; a count of 8 would also admit "
                                "the empty member selection)");

  auto enumerated = enumerate_configurations(model, 1000);
  std::set<std::set<std::string>> as_sets;
  for (const auto& configuration : enumerated.configurations)
    as_sets.insert(configuration.selected);
  check.require(as_sets == oracle,
                "enumerate_configurations must equal the 2^5 subset brute force");
  check.require(count == oracle.size(),
                "count_configurations must equal the brute-force count");

  // Each non-empty subset of {Bluetooth, USB, WiFi} appears exactly once.
  const std::vector<std::string> members = {"Bluetooth", "USB", "WiFi"};
  for (int mask = 1; mask < 8; ++mask) {
    std::set<std::string> expected = {"Phone", "Connectivity"};
    for (int i = 0; i < 3; ++i)
      if ((mask >> i) & 1) expected.insert(members[i]);
    int occurrences = 0;
    for (const auto& configuration : enumerated.configurations)
      if (configuration.selected == expected) ++occurrences;
    check.require(occurrences == 1, "connectivity subset #" + std::to_string(mask) +
                                        " must appear exactly once, found " +
                                        std::to_string(occurrences));
  }
}

// Criterion 2 -- alternative semantics on the Symbian/Android fixture.
void criterion_2(Check& check) {
  auto model = fixture("os_alternative.fml");
  auto enumerated = enumerate_configurations(model, 1000);
  check.require(enumerated.configurations.size() == 2,
                "expected exactly 2 configurations, got " +
                    std::to_string(enumerated.configurations.size()));
  check.require(count_configurations(model) == 2, "count_configurations must be 2");
  for (const auto& configuration : enumerated.configurations)
    check.require(!(configuration.selected.count("Symbian") &&
                    configuration.selected.count("Android")),
                  "no configuration may contain both alternatives");
}

// Criterion 3 -- enumeration equals the 2^n brute force on random models.
void criterion_3(Check& check) {
  ModelGenerator generator(96321);
  int mismatches = 0;
  for (int round = 0; round < 200; ++round) {
    auto model = generator.next(2 + round % 11, 3);
    auto oracle = brute_force_configurations(model);
    auto enumerated = enumerate_configurations(model, std::uint64_t{1} << 40);
    std::set<std::set<std::string>> as_sets;
    for (const auto& configuration : enumerated.configurations)
      as_sets.insert(configuration.selected);
    if (as_sets != oracle || count_configurations(model) != oracle.size()) ++mismatches;
  }
  check.require(mismatches == 0,
                std::to_string(mismatches) + " of 200 random models mismatched");
}

// Criterion 4 -- search-based satisfiability equals the truth table.
void criterion_4(Check& check) {
  OntologyGenerator generator(777001);
  int mismatches = 0;
  int queries = 0;
  for (int round = 0; round < 200; ++round) {
    auto onto = generator.next(2 + round % 11, 20);
    const auto& names = onto.declared_classes();
    for (const auto& name : names) {
      ++queries;
      if (is_satisfiable(onto, ClassExpr::named(name), SatBackend::Search) !=
          is_satisfiable(onto, ClassExpr::named(name), SatBackend::TruthTable))
        ++mismatches;
    }
    for (int extra = 0; extra < 3; ++extra) {
      auto query = generator.expr(names, 2);
      ++queries;
      if (is_satisfiable(onto, query, SatBackend::Search) !=
          is_satisfiable(onto, query, SatBackend::TruthTable))
        ++mismatches;
    }
    // Subsumption through both backends as well.
    for (int extra = 0; extra < 2 && names.size() >= 2; ++extra) {
      ++queries;
      if (is_subsumed(onto, ClassExpr::named(names[0]), ClassExpr::named(names.back()),
                      SatBackend::Search) !=
          is_subsumed(onto, ClassExpr::named(names[0]), ClassExpr::named(names.back()),
                      SatBackend::TruthTable))
        ++mismatches;
    }
  }
  check.require(queries >= 1000, "needed >= 1000 queries, ran " + std::to_string(queries));
  check.require(mismatches == 0, std::to_string(mismatches) + " backend mismatches");
}

// Criterion 5 -- dead features equal the unsatisfiable mapped classes.
void criterion_5(Check& check) {
  ModelGenerator generator(424242);
  int mismatches = 0;
  for (int round = 0; round < 100; ++round) {
    auto model = generator.next(2 + round % 11, 3);
    auto dead = dead_features(model);
    auto onto = fm_to_ontology(model, "m");
    std::set<std::string> unsatisfiable;
    for (const auto& name : canonical_feature_order(model))
      if (!is_satisfiable(onto, ClassExpr::named(name))) unsatisfiable.insert(name);
    if (dead != unsatisfiable) ++mismatches;
  }
  check.require(mismatches == 0,
                std::to_string(mismatches) + " of 100 random models broke the bridge");
}

// Criterion 6 -- classification is the transitive reduction of subsumption.
void criterion_6(Check& check) {
  OntologyGenerator generator(777001);  // the criterion-4 ontologies
  int broken = 0;
  for (int round = 0; round < 200; ++round) {
    auto onto = generator.next(2 + round % 11, 20);
    auto hierarchy = classify(onto);

    std::map<std::string, std::size_t> node_of;
    for (std::size_t n = 0; n < hierarchy.nodes.size(); ++n)
      for (const auto& name : hierarchy.nodes[n]) node_of[name] = n;

    std::size_t n = hierarchy.nodes.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& [child, parent] : hierarchy.edges) reach[child][parent] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    bool ok = true;
    // Closure recovers subsumption exactly between satisfiable classes.
    for (const auto& [a, na] : node_of)
      for (const auto& [b, nb] : node_of)
        if (reach[na][nb] != is_subsumed(onto, ClassExpr::named(a), ClassExpr::named(b)))
          ok = false;
    // Every edge is direct: no third node strictly between its endpoints.
    for (const auto& [child, parent] : hierarchy.edges) {
      for (std::size_t middle = 0; middle < n && ok; ++middle) {
        if (middle == child || middle == parent) continue;
        if (reach[child][middle] && reach[middle][parent]) ok = false;
      }
    }
    if (!ok) ++broken;
  }
  check.require(broken == 0,
                std::to_string(broken) + " of 200 classifications were not exact");
}

// Criterion 7 -- the desk-scale federation scenario, golden-exact.
void criterion_7(Check& check) {
  auto federation = sample_federation();
  check.require(federation.federation.declared_classes() ==
                    std::vector<std::string>{"fed:Federation", "fed:Bluetooth",
                                             "fed:Connectivity", "fed:Usb", "fed:Wifi"},
                "federation classes must be {Federation, Bluetooth, Connectivity, Usb, "
                "Wifi}");
  for (const char* member : {"fed:Bluetooth", "fed:Usb", "fed:Wifi"})
    check.require(
        is_subsumed(federation.federation, ClassExpr::named(member),
                    ClassExpr::named("fed:Connectivity")),
        std::string(member) + " must be subsumed by fed:Connectivity");
  check.require(federation.links.size() == 8, "expected exactly 8 links, got " +
                                                  std::to_string(federation.links.size()));

  auto dir = scratch_dir("criterion7");
  save_workspace(federation, dir);
  check.require(read_file((dir / "federation.ofn").string()) ==
                    golden("workspace/federation.ofn"),
                "federation.ofn differs from the golden file");
  check.require(read_file((dir / "links.json").string()) == golden("workspace/links.json"),
                "links.json differs from the golden file");
  check.require(to_docs(load_workspace(dir)) == golden("federation_docs.md"),
                "docs output differs from the golden file");
  check.require(to_uml(load_workspace(dir)) == golden("federation.uml"),
                "uml output differs from the golden file");
  fs::remove_all(dir);
}

// Criterion 8 -- extend then remove reproduces the workspace byte-identically.
void criterion_8(Check& check) {
  auto federation = sample_federation();
  auto original_dir = scratch_dir("criterion8-original");
  save_workspace(federation, original_dir);

  auto extended = extend_federation(federation, "bada", fixture("bada_sample.fml"));
  auto restored = remove_tool(extended, "bada");
  auto restored_dir = scratch_dir("criterion8-restored");
  save_workspace(restored, restored_dir);

  check.require(workspace_bytes(original_dir) == workspace_bytes(restored_dir),
                "workspace bytes differ after extend + remove");
  fs::remove_all(original_dir);
  fs::remove_all(restored_dir);
}

// Criterion 9 -- the three round-trips over the whole fixture corpus.
void criterion_9(Check& check) {
  int failures = 0;
  for (const auto& name : kFixtureModels) {
    auto model = fixture(name);
    auto text = serialize(model);
    auto reparsed = parse(text);
    if (!reparsed.ok() || !(*reparsed.model == model) ||
        serialize(*reparsed.model) != text) {
      ++failures;
      check.require(false, "fm_text round-trip failed on " + name);
    }

    auto onto = fm_to_ontology(model, "t");
    auto owl = to_owl(onto);
    auto reparsed_owl = parse_owl(owl);
    if (!reparsed_owl.ok() || !(*reparsed_owl.ontology == onto) ||
        to_owl(*reparsed_owl.ontology) != owl) {
      ++failures;
      check.require(false, "owl round-trip failed on " + name);
    }
  }

  auto federation = sample_federation();
  auto owl = to_owl(federation.federation);
  auto reparsed = parse_owl(owl);
  if (!reparsed.ok() || !(*reparsed.ontology == federation.federation)) {
    ++failures;
    check.require(false, "owl round-trip failed on the federation ontology");
  }

  auto dir = scratch_dir("criterion9");
  save_workspace(federation, dir);
  if (!structurally_equal(load_workspace(dir), federation)) {
    ++failures;
    check.require(false, "workspace load(save()) is not a structural identity");
  }
  auto three_tools = extend_federation(federation, "bada", fixture("bada_sample.fml"));
  save_workspace(three_tools, dir);
  if (!structurally_equal(load_workspace(dir), three_tools)) {
    ++failures;
    check.require(false, "workspace round-trip failed on the extended federation");
  }
  fs::remove_all(dir);

  check.require(failures == 0, "round-trip failures: " + std::to_string(failures));
}

struct Criterion {
  int number;
  std::string title;
  std::function<void(Check&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "or-relation semantics on the connectivity example", criterion_1},
    {2, "alternative semantics on the Symbian/Android fixture", criterion_2},
    {3, "enumeration equals the 2^n brute force on 200 random models", criterion_3},
    {4, "search satisfiability equals the truth table on 200 random ontologies",
     criterion_4},
    {5, "dead features equal the unsatisfiable mapped classes on 100 random models",
     criterion_5},
    {6, "classification is the exact transitive reduction of subsumption", criterion_6},
    {7, "desk-scale federation fixture matches the goldens", criterion_7},
    {8, "extend then remove reproduces the workspace byte-identically", criterion_8},
    {9, "parse/serialize, OWL, and workspace round-trips over the corpus", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") only = std::atoi(argv[2]);

  int failed = 0;
  for (const auto& criterion : kCriteria) {
    if (only != 0 && criterion.number != only) continue;
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    bool ok = check.failures().empty();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.number << ": "
              << criterion.title << "\n";
    for (const auto& failure : check.failures()) std::cout << "     - " << failure << "\n";
    failed += ok ? 0 : 1;
  }
  return failed;
}
