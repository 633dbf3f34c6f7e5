#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "fedont/analysis.hpp"
#include "fedont/federation.hpp"
#include "fedont/fm_text.hpp"
#include "fedont/ontology.hpp"
#include "fedont/owl_text.hpp"

namespace {

using namespace fedont;

// A root with `width` or-groups of three members each: 7^width configurations.
FeatureModel or_tree(int width) {
  FeatureModel model;
  model.name = "Bench";
  model.root.name = "Root";
  for (int g = 0; g < width; ++g) {
    FeatureGroup group{GroupKind::Or, {}};
    for (int m = 0; m < 3; ++m)
      group.members.push_back({"G" + std::to_string(g) + "M" + std::to_string(m), {}, {}});
    model.root.groups.push_back(std::move(group));
  }
  return model;
}

Ontology chain_ontology(int length) {
  Ontology onto("bench");
  std::vector<std::string> names;
  for (int i = 0; i < length; ++i) names.push_back(onto.declare("C" + std::to_string(i)));
  for (int i = 0; i + 1 < length; ++i)
    onto.add(Axiom::sub_class_of(ClassExpr::named(names[i]), ClassExpr::named(names[i + 1])));
  return onto;
}

void BM_parse(benchmark::State& state) {
  auto text = serialize(or_tree(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto result = parse(text);
    benchmark::DoNotOptimize(result);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_parse)->Arg(4)->Arg(16)->Arg(64);

void BM_count_configurations(benchmark::State& state) {
  auto model = or_tree(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(count_configurations(model, 64));
}
BENCHMARK(BM_count_configurations)->Arg(2)->Arg(4)->Arg(6);

void BM_enumerate_configurations(benchmark::State& state) {
  auto model = or_tree(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = enumerate_configurations(model, 1 << 20);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_enumerate_configurations)->Arg(2)->Arg(4);

void BM_dead_features(benchmark::State& state) {
  auto model = or_tree(static_cast<int>(state.range(0)));
  model.constraints.push_back({ConstraintKind::Excludes, "G0M0", "G0M1"});
  for (auto _ : state)
    benchmark::DoNotOptimize(dead_features(model));
}
BENCHMARK(BM_dead_features)->Arg(2)->Arg(4);

void BM_satisfiability_search(benchmark::State& state) {
  auto onto = chain_ontology(static_cast<int>(state.range(0)));
  auto query = ClassExpr::named("C0");
  for (auto _ : state)
    benchmark::DoNotOptimize(is_satisfiable(onto, query, SatBackend::Search));
}
BENCHMARK(BM_satisfiability_search)->Arg(8)->Arg(32)->Arg(128);

void BM_satisfiability_truth_table(benchmark::State& state) {
  auto onto = chain_ontology(static_cast<int>(state.range(0)));
  auto query = ClassExpr::named("C0");
  for (auto _ : state)
    benchmark::DoNotOptimize(is_satisfiable(onto, query, SatBackend::TruthTable));
}
BENCHMARK(BM_satisfiability_truth_table)->Arg(8)->Arg(16);

void BM_classify(benchmark::State& state) {
  auto onto = chain_ontology(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(classify(onto));
}
BENCHMARK(BM_classify)->Arg(8)->Arg(16)->Arg(32);

void BM_to_owl_round_trip(benchmark::State& state) {
  auto onto = chain_ontology(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto text = to_owl(onto);
    auto parsed = parse_owl(text);
    benchmark::DoNotOptimize(parsed);
  }
}
BENCHMARK(BM_to_owl_round_trip)->Arg(16)->Arg(64);

void BM_build_federation(benchmark::State& state) {
  auto a = or_tree(static_cast<int>(state.range(0)));
  auto b = or_tree(static_cast<int>(state.range(0)));
  b.name = "BenchB";
  for (auto _ : state) {
    auto result = build_federation({{"a", a}, {"b", b}}, {});
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_build_federation)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
