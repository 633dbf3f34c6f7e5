#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fedont/analysis.hpp"
#include "fedont/errors.hpp"
#include "fedont/federation.hpp"
#include "support/test_support.hpp"

using namespace fedont;
using namespace fedont::testing;

namespace {

FeatureModel fixture(const std::string& name) {
  return parse_or_die(read_file(std::string(FEDONT_FIXTURE_DIR) + "/" + name));
}

FederationResult sample_federation(FederationOptions options = {}) {
  if (options.purpose.empty())
    options.purpose = "Interoperability of sample mobile operating systems";
  if (options.scope.empty()) options.scope = "Connectivity feature subset at desk scale";
  return build_federation(
      {{"sym", fixture("symbian_sample.fml")}, {"and", fixture("android_sample.fml")}},
      options);
}

bool has_axiom(const Ontology& onto, const Axiom& axiom) {
  return std::find(onto.axioms().begin(), onto.axioms().end(), axiom) != onto.axioms().end();
}

}  // namespace

TEST_CASE("fm_to_ontology maps the or-group phone model") {
  auto onto = fm_to_ontology(fixture("phone.fml"), "p");
  CHECK(onto.declared_classes() ==
        std::vector<std::string>{"p:Phone", "p:Connectivity", "p:Bluetooth", "p:USB",
                                 "p:WiFi"});
  // Mandatory child: both subclass directions, i.e. Connectivity == Phone.
  CHECK(has_axiom(onto, Axiom::sub_class_of(ClassExpr::named("p:Connectivity"),
                                            ClassExpr::named("p:Phone"))));
  CHECK(has_axiom(onto, Axiom::sub_class_of(ClassExpr::named("p:Phone"),
                                            ClassExpr::named("p:Connectivity"))));
  CHECK(has_axiom(
      onto, Axiom::sub_class_of(
                ClassExpr::named("p:Connectivity"),
                ClassExpr::union_of({ClassExpr::named("p:Bluetooth"),
                                     ClassExpr::named("p:USB"), ClassExpr::named("p:WiFi")}))));
  CHECK(has_axiom(onto, Axiom::sub_class_of(ClassExpr::named("p:Bluetooth"),
                                            ClassExpr::named("p:Connectivity"))));
}

TEST_CASE("fm_to_ontology maps alternatives to disjointness") {
  auto onto = fm_to_ontology(fixture("os_alternative.fml"), "os");
  CHECK(has_axiom(onto, Axiom::disjoint_classes({ClassExpr::named("os:Symbian"),
                                                 ClassExpr::named("os:Android")})));
}

TEST_CASE("fm_to_ontology maps constraints") {
  auto onto = fm_to_ontology(fixture("anomaly.fml"), "t");
  CHECK(has_axiom(onto, Axiom::disjoint_classes({ClassExpr::named("t:A"),
                                                 ClassExpr::named("t:B")})));
}

TEST_CASE("fm_to_ontology of a root-only model declares one class, no axioms") {
  auto onto = fm_to_ontology(parse_or_die("model \"M\" feature Root"), "m");
  CHECK(onto.declared_classes() == std::vector<std::string>{"m:Root"});
  CHECK(onto.axioms().empty());
}

TEST_CASE("extract_terms normalizes and records paths") {
  auto table = extract_terms(fixture("android_sample.fml"));
  REQUIRE(table.entries.size() == 10);
  CHECK(table.entries[0].raw == "Android");
  CHECK(table.entries[0].path.empty());

  const TermEntry* framework = table.find("applicationframework");
  REQUIRE(framework);
  CHECK(framework->raw == "Application_Framework");

  const TermEntry* wifi = table.find("wifi");
  REQUIRE(wifi);
  CHECK(wifi->raw == "Wi_Fi");
  CHECK(wifi->path == std::vector<std::string>{"Android", "Connectivity"});
}

TEST_CASE("extract_terms applies the synonym table") {
  auto model = parse_or_die("model \"M\" feature Root { optional Wireless_Fidelity }");
  SynonymTable synonyms{{"wirelessfidelity", "wifi"}};
  auto table = extract_terms(model, synonyms);
  CHECK(table.find("wifi") != nullptr);
  CHECK(table.find("wirelessfidelity") == nullptr);
}

TEST_CASE("common_terms finds exact matches on normalized names") {
  auto matches = common_terms(extract_terms(fixture("symbian_sample.fml")),
                              extract_terms(fixture("android_sample.fml")), false);
  REQUIRE(matches.size() == 4);
  CHECK(matches[0].normalized == "bluetooth");
  CHECK(matches[1].normalized == "connectivity");
  CHECK(matches[2].normalized == "usb");
  CHECK(matches[3].normalized == "wifi");
  CHECK(matches[3].raw_in_a == "WiFi");
  CHECK(matches[3].raw_in_b == "Wi_Fi");
}

TEST_CASE("common_terms of disjoint vocabularies is empty") {
  auto matches = common_terms(extract_terms(fixture("phone.fml")),
                              extract_terms(fixture("anomaly.fml")), true);
  CHECK(matches.empty());
}

TEST_CASE("fuzzy matching pairs terms at edit distance one") {
  auto a = extract_terms(parse_or_die("model \"A\" feature Alpha { optional Sensor }"));
  auto b = extract_terms(parse_or_die("model \"B\" feature Bravo { optional Sensors }"));
  CHECK(common_terms(a, b, false).empty());
  auto matches = common_terms(a, b, true);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].fuzzy);
  CHECK(matches[0].normalized == "sensor");  // lexicographically smaller form
  CHECK(matches[0].raw_in_a == "Sensor");
  CHECK(matches[0].raw_in_b == "Sensors");
}

TEST_CASE("the spec's French telephony pair is distance two, not one") {
  // "telephony" vs "telephonie" needs a substitution and an insertion, so
  // even fuzzy mode must not match it.
  CHECK(edit_distance("telephony", "telephonie") == 2);
  auto a = extract_terms(parse_or_die("model \"A\" feature Alpha { optional Telephony }"));
  auto b = extract_terms(parse_or_die("model \"B\" feature Bravo { optional Telephonie }"));
  CHECK(common_terms(a, b, true).empty());
}

TEST_CASE("build_affinity groups members under their shared ancestor") {
  auto a = extract_terms(fixture("symbian_sample.fml"));
  auto b = extract_terms(fixture("android_sample.fml"));
  auto affinity = build_affinity(common_terms(a, b, false), a, b);
  REQUIRE(affinity.groups.size() == 2);
  CHECK(affinity.groups[0].key == "connectivity");
  CHECK(affinity.groups[0].members ==
        std::vector<std::string>{"bluetooth", "usb", "wifi"});
  CHECK(affinity.groups[1].key == "shared");
  CHECK(affinity.groups[1].members == std::vector<std::string>{"connectivity"});
  CHECK(affinity.warnings.empty());
}

TEST_CASE("build_affinity falls back to shared on ancestor disagreement") {
  // Camera sits under Hub in one model but under Shed in the other.
  auto a = extract_terms(parse_or_die(
      "model \"A\" feature Alpha { optional Hub { optional Camera } optional Shed }"));
  auto b = extract_terms(parse_or_die(
      "model \"B\" feature Bravo { optional Hub optional Shed { optional Camera } }"));
  auto matches = common_terms(a, b, false);  // camera, hub, shed
  auto affinity = build_affinity(matches, a, b);
  REQUIRE(affinity.groups.size() == 1);
  CHECK(affinity.groups[0].key == "shared");
  CHECK(affinity.groups[0].members ==
        std::vector<std::string>{"camera", "hub", "shed"});
  REQUIRE(affinity.warnings.size() == 1);
  CHECK(affinity.warnings[0].find("camera") != std::string::npos);
}

TEST_CASE("build_affinity sends ancestors missing on one side to shared silently") {
  auto a = extract_terms(
      parse_or_die("model \"A\" feature Alpha { optional Hub { optional Camera } }"));
  auto b = extract_terms(parse_or_die(
      "model \"B\" feature Bravo { optional Hub optional Dock { optional Camera } }"));
  auto affinity = build_affinity(common_terms(a, b, false), a, b);
  REQUIRE(affinity.groups.size() == 1);
  CHECK(affinity.groups[0].key == "shared");
  CHECK(affinity.warnings.empty());
}

TEST_CASE("build_federation reproduces the sample federation") {
  auto federation = sample_federation();
  CHECK(federation.federation.declared_classes() ==
        std::vector<std::string>{"fed:Federation", "fed:Bluetooth", "fed:Connectivity",
                                 "fed:Usb", "fed:Wifi"});
  CHECK(has_axiom(federation.federation,
                  Axiom::sub_class_of(ClassExpr::named("fed:Bluetooth"),
                                      ClassExpr::named("fed:Connectivity"))));
  CHECK(has_axiom(federation.federation,
                  Axiom::sub_class_of(ClassExpr::named("fed:Usb"),
                                      ClassExpr::named("fed:Connectivity"))));
  CHECK(has_axiom(federation.federation,
                  Axiom::sub_class_of(ClassExpr::named("fed:Wifi"),
                                      ClassExpr::named("fed:Connectivity"))));
  CHECK(has_axiom(federation.federation,
                  Axiom::sub_class_of(ClassExpr::named("fed:Connectivity"),
                                      ClassExpr::named("fed:Federation"))));
  REQUIRE(federation.links.size() == 8);
  for (const auto& link : federation.links) CHECK(link.kind == LinkKind::Subsumes);
  CHECK(federation.links[0].federation_class == "fed:Bluetooth");
  CHECK(federation.links[0].tool_id == "and");
  CHECK(federation.links[0].tool_class == "and:Bluetooth");
  CHECK(federation.links[1].tool_id == "sym");
  CHECK(federation.warnings.empty());
  CHECK(federation.manifest.tool_ids == std::vector<std::string>{"and", "sym"});
}

TEST_CASE("build_federation requires two models and distinct ids") {
  CHECK_THROWS_AS(build_federation({{"solo", fixture("phone.fml")}}, {}), DomainError);
  CHECK_THROWS_AS(build_federation({{"dup", fixture("phone.fml")},
                                    {"dup", fixture("anomaly.fml")}},
                                   {}),
                  DomainError);
  CHECK_THROWS_AS(build_federation({{"fed", fixture("phone.fml")},
                                    {"other", fixture("anomaly.fml")}},
                                   {}),
                  DomainError);
}

TEST_CASE("models sharing nothing federate to a bare root") {
  auto federation = build_federation(
      {{"a", fixture("phone.fml")}, {"b", fixture("anomaly.fml")}}, {});
  CHECK(federation.federation.declared_classes() ==
        std::vector<std::string>{"fed:Federation"});
  CHECK(federation.links.empty());
}

TEST_CASE("a term common to two of three tools gets exactly two links") {
  auto third = parse_or_die("model \"C\" feature RootC { optional Camera }");
  auto federation = build_federation({{"sym", fixture("symbian_sample.fml")},
                                      {"and", fixture("android_sample.fml")},
                                      {"cam", third}},
                                     {});
  int camera_links = 0;
  for (const auto& link : federation.links)
    if (link.federation_class == "fed:Camera") ++camera_links;
  CHECK(camera_links == 2);
  // Every federation class still has >= 2 supporting links.
  for (const auto& name : federation.federation.declared_classes()) {
    if (name == "fed:Federation") continue;
    int supporters = 0;
    for (const auto& link : federation.links)
      if (link.federation_class == name) ++supporters;
    CHECK(supporters >= 2);
  }
}

TEST_CASE("build_federation is symmetric in its inputs") {
  auto forward = build_federation(
      {{"sym", fixture("symbian_sample.fml")}, {"and", fixture("android_sample.fml")}}, {});
  auto swapped = build_federation(
      {{"and", fixture("android_sample.fml")}, {"sym", fixture("symbian_sample.fml")}}, {});
  CHECK(forward.federation == swapped.federation);
  CHECK(forward.links == swapped.links);
}

TEST_CASE("equivalence_on_exact upgrades links with identical raw names") {
  FederationOptions options;
  options.equivalence_on_exact = true;
  auto federation = sample_federation(options);
  for (const auto& link : federation.links) {
    CAPTURE(link.federation_class);
    if (link.federation_class == "fed:Wifi")
      CHECK(link.kind == LinkKind::Subsumes);  // WiFi vs Wi_Fi raw names differ
    else
      CHECK(link.kind == LinkKind::Equivalent);
  }
}

TEST_CASE("synonyms unify spelled-out terms") {
  auto spelled = parse_or_die(
      "model \"S\" feature RootS { optional Wireless_Fidelity optional Bluetooth }");
  FederationOptions options;
  options.synonyms = {{"wirelessfidelity", "wifi"}};
  auto federation =
      build_federation({{"a", fixture("phone.fml")}, {"b", spelled}}, options);
  CHECK(federation.federation.is_declared("fed:Wifi"));
  CHECK(federation.federation.is_declared("fed:Bluetooth"));
}

TEST_CASE("extend adds a link for a known term without new classes") {
  auto federation = sample_federation();
  auto extended = extend_federation(federation, "bada", fixture("bada_sample.fml"));
  CHECK(extended.federation == federation.federation);
  REQUIRE(extended.links.size() == federation.links.size() + 1);
  const auto& added = extended.links.back();
  CHECK(added.federation_class == "fed:Bluetooth");
  CHECK(added.tool_id == "bada");
  CHECK(added.tool_class == "bada:Bluetooth");
  CHECK(extended.manifest.tool_ids ==
        std::vector<std::string>{"and", "bada", "sym"});
  CHECK_THROWS_AS(extend_federation(federation, "sym", fixture("bada_sample.fml")),
                  DomainError);
}

TEST_CASE("extend with a disjoint vocabulary only adds the tool") {
  auto federation = sample_federation();
  auto extended = extend_federation(federation, "iso", fixture("anomaly.fml"));
  CHECK(extended.federation == federation.federation);
  CHECK(extended.links == federation.links);
  CHECK(extended.tools.count("iso") == 1);
  CHECK(extended.models.count("iso") == 1);
}

TEST_CASE("extend spawns a class for a term newly shared by two tools") {
  auto federation = sample_federation();
  auto with_camera =
      parse_or_die("model \"C\" feature RootC { optional Camera optional Lens }");
  auto extended = extend_federation(federation, "cam", with_camera);
  REQUIRE(extended.federation.is_declared("fed:Camera"));
  int camera_links = 0;
  for (const auto& link : extended.links)
    if (link.federation_class == "fed:Camera") ++camera_links;
  CHECK(camera_links == 2);
}

TEST_CASE("remove_tool keeps classes with two remaining supporters") {
  auto third = parse_or_die(
      "model \"T\" feature RootT { mandatory Connectivity2 { optional Bluetooth } }");
  // Three tools sharing bluetooth; removing one keeps the class alive.
  auto federation = build_federation({{"sym", fixture("symbian_sample.fml")},
                                      {"and", fixture("android_sample.fml")},
                                      {"thd", third}},
                                     {});
  auto removed = remove_tool(federation, "thd");
  CHECK(removed.federation.is_declared("fed:Bluetooth"));
  int bluetooth_links = 0;
  for (const auto& link : removed.links)
    if (link.federation_class == "fed:Bluetooth") ++bluetooth_links;
  CHECK(bluetooth_links == 2);
}

TEST_CASE("remove_tool drops unsupported classes and re-parents children") {
  auto federation = sample_federation();
  auto removed = remove_tool(federation, "and");
  CHECK(removed.federation.declared_classes() ==
        std::vector<std::string>{"fed:Federation"});
  CHECK(removed.links.empty());
  CHECK(removed.warnings.size() == 1);  // down to one tool
  CHECK_THROWS_AS(remove_tool(federation, "nope"), DomainError);
}

TEST_CASE("re-parenting: a surviving child attaches to the federation root") {
  // sym/and/homes share "home"; sym/and additionally share "door" under it.
  auto a = parse_or_die(
      "model \"A\" feature RootA { optional Home { optional Door } optional Porch }");
  auto b = parse_or_die(
      "model \"B\" feature RootB { optional Home { optional Door } }");
  auto c = parse_or_die("model \"C\" feature RootC { optional Door }");
  auto federation = build_federation({{"a", a}, {"b", b}, {"c", c}}, {});
  REQUIRE(federation.federation.is_declared("fed:Home"));
  REQUIRE(federation.federation.is_declared("fed:Door"));

  // Removing "a" leaves Home with one supporter (b); Door keeps b and c.
  auto removed = remove_tool(federation, "a");
  CHECK_FALSE(removed.federation.is_declared("fed:Home"));
  REQUIRE(removed.federation.is_declared("fed:Door"));
  CHECK(has_axiom(removed.federation,
                  Axiom::sub_class_of(ClassExpr::named("fed:Door"),
                                      ClassExpr::named("fed:Federation"))));
}

namespace {

void check_support_invariant(const FederationResult& result) {
  for (const auto& name : result.federation.declared_classes()) {
    if (name == "fed:Federation") continue;
    std::set<std::string> supporters;
    for (const auto& link : result.links)
      if (link.federation_class == name) supporters.insert(link.tool_id);
    CHECK(supporters.size() >= 2);
  }
}

}  // namespace

TEST_CASE("every federation class keeps >= 2 supporting tools through its lifecycle") {
  auto federation = sample_federation();
  check_support_invariant(federation);
  auto extended = extend_federation(federation, "bada", fixture("bada_sample.fml"));
  check_support_invariant(extended);
  auto with_camera = extend_federation(
      extended, "cam", parse_or_die("model \"C\" feature RootC { optional Camera }"));
  check_support_invariant(with_camera);
  check_support_invariant(remove_tool(with_camera, "cam"));
  check_support_invariant(remove_tool(with_camera, "sym"));
}

TEST_CASE("extend then remove restores the original federation") {
  auto federation = sample_federation();
  auto extended = extend_federation(federation, "bada", fixture("bada_sample.fml"));
  auto restored = remove_tool(extended, "bada");
  CHECK(structurally_equal(restored, federation));
}

TEST_CASE("remove then re-extend with the same tool restores the federation") {
  auto federation = sample_federation();
  auto without = remove_tool(federation, "sym");
  auto rebuilt = extend_federation(without, "sym", fixture("symbian_sample.fml"));
  // Purpose/scope live in the manifest and survive both operations.
  CHECK(structurally_equal(rebuilt, federation));
}

TEST_CASE("semantic bridge: dead features are exactly the unsatisfiable classes") {
  ModelGenerator generator(31337);
  for (int round = 0; round < 40; ++round) {
    auto model = generator.next(2 + round % 11, 3);
    CAPTURE(serialize(model));
    auto dead = dead_features(model);
    auto onto = fm_to_ontology(model, "m");
    std::set<std::string> unsatisfiable;
    for (const auto& name : canonical_feature_order(model))
      if (!is_satisfiable(onto, ClassExpr::named(name)))
        unsatisfiable.insert(name);
    REQUIRE(dead == unsatisfiable);
  }
}

TEST_CASE("ontology models with a true root are exactly the valid configurations") {
  ModelGenerator generator(555);
  for (int round = 0; round < 25; ++round) {
    auto model = generator.next(2 + round % 8, 2);
    auto onto = fm_to_ontology(model, "m");
    auto names = canonical_feature_order(model);
    auto oracle = brute_force_configurations(model);

    // Evaluate the ontology's axioms over every subset directly.
    std::set<std::set<std::string>> ontology_models;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << names.size()); ++mask) {
      std::set<std::string> subset;
      for (std::size_t i = 0; i < names.size(); ++i)
        if ((mask >> i) & 1) subset.insert(names[i]);
      if (!subset.count(model.root.name)) continue;

      std::function<bool(const ClassExpr&)> eval = [&](const ClassExpr& expr) -> bool {
        switch (expr.kind()) {
          case ClassExpr::Kind::Named: {
            auto colon = expr.name().find(':');
            return subset.count(expr.name().substr(colon + 1)) > 0;
          }
          case ClassExpr::Kind::Thing:
            return true;
          case ClassExpr::Kind::Nothing:
            return false;
          case ClassExpr::Kind::Complement:
            return !eval(expr.operands()[0]);
          case ClassExpr::Kind::Intersection:
            for (const auto& operand : expr.operands())
              if (!eval(operand)) return false;
            return true;
          case ClassExpr::Kind::Union:
            for (const auto& operand : expr.operands())
              if (eval(operand)) return true;
            return false;
        }
        return false;
      };
      bool all_hold = true;
      for (const auto& axiom : onto.axioms()) {
        switch (axiom.kind) {
          case Axiom::Kind::SubClassOf:
            all_hold = !eval(axiom.exprs[0]) || eval(axiom.exprs[1]);
            break;
          case Axiom::Kind::EquivalentClasses:
            for (std::size_t i = 1; i < axiom.exprs.size() && all_hold; ++i)
              all_hold = eval(axiom.exprs[0]) == eval(axiom.exprs[i]);
            break;
          case Axiom::Kind::DisjointClasses:
            for (std::size_t i = 0; i < axiom.exprs.size() && all_hold; ++i)
              for (std::size_t j = i + 1; j < axiom.exprs.size() && all_hold; ++j)
                all_hold = !(eval(axiom.exprs[i]) && eval(axiom.exprs[j]));
            break;
        }
        if (!all_hold) break;
      }
      if (all_hold) ontology_models.insert(subset);
    }
    REQUIRE(ontology_models == oracle);
  }
}

TEST_CASE("merged_view entails every link") {
  auto federation = sample_federation();
  auto merged = merged_view(federation);
  CHECK(is_consistent(merged));
  for (const auto& link : federation.links)
    CHECK(is_subsumed(merged, ClassExpr::named(link.tool_class),
                      ClassExpr::named(link.federation_class)));
  // Tool hierarchies embed: sym:Bluetooth is still below sym:Connectivity.
  CHECK(is_subsumed(merged, ClassExpr::named("sym:Bluetooth"),
                    ClassExpr::named("sym:Connectivity")));
  // And across the federation: sym:Bluetooth <= fed:Connectivity.
  CHECK(is_subsumed(merged, ClassExpr::named("sym:Bluetooth"),
                    ClassExpr::named("fed:Connectivity")));
}
