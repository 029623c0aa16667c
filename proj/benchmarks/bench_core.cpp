#include <benchmark/benchmark.h>

#include "coxassoc/isometry.hpp"

using namespace coxassoc;

namespace {

void bm_root_closure(benchmark::State& state, const char* code) {
  for (auto _ : state) {
    auto sys = build_named(code);
    benchmark::DoNotOptimize(sys.num_positive_roots());
  }
}

void bm_sorting_word_w0(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto w0 = longest_element(sys);
  auto c = coxeter_elements(sys)[0].word;
  for (auto _ : state) {
    auto word = c_sorting_word(w0, c);
    benchmark::DoNotOptimize(word.size());
  }
}

void bm_singletons(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto c = coxeter_elements(sys)[0].word;
  for (auto _ : state) {
    auto lattice = c_singletons(sys, c);
    benchmark::DoNotOptimize(lattice.nodes.size());
  }
}

void bm_associahedron(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto u = balanced_point(sys);
  auto c = coxeter_elements(sys)[0].word;
  for (auto _ : state) {
    auto poly = associahedron(sys, c, u);
    benchmark::DoNotOptimize(poly.vertices.size());
  }
}

void bm_permutahedron(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto u = balanced_point(sys);
  for (auto _ : state) {
    auto poly = permutahedron(sys, u);
    benchmark::DoNotOptimize(poly.vertices.size());
  }
}

void bm_oracle_pair(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto u = balanced_point(sys);
  auto ces = coxeter_elements(sys);
  auto p1 = associahedron(sys, ces[0].word, u);
  auto p2 = associahedron(sys, ces[1].word, u);
  for (auto _ : state) {
    auto witness = congruence_oracle(p1, p2);
    benchmark::DoNotOptimize(witness.has_value());
  }
}

void bm_classify_with_oracle(benchmark::State& state, const char* code) {
  auto sys = build_named(code);
  auto u = balanced_point(sys);
  for (auto _ : state) {
    auto report = verify_classification(sys, u);
    benchmark::DoNotOptimize(report.agree);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_root_closure, A3, "A3");
BENCHMARK_CAPTURE(bm_root_closure, H4, "H4");
BENCHMARK_CAPTURE(bm_root_closure, E8, "E8");
BENCHMARK_CAPTURE(bm_sorting_word_w0, B3, "B3");
BENCHMARK_CAPTURE(bm_sorting_word_w0, H4, "H4");
BENCHMARK_CAPTURE(bm_singletons, D4, "D4");
BENCHMARK_CAPTURE(bm_singletons, H4, "H4");
BENCHMARK_CAPTURE(bm_associahedron, B3, "B3");
BENCHMARK_CAPTURE(bm_associahedron, D4, "D4");
BENCHMARK_CAPTURE(bm_permutahedron, D4, "D4");
BENCHMARK_CAPTURE(bm_oracle_pair, A3, "A3");
BENCHMARK_CAPTURE(bm_oracle_pair, H3, "H3");
BENCHMARK_CAPTURE(bm_classify_with_oracle, A3, "A3");
BENCHMARK_CAPTURE(bm_classify_with_oracle, D4, "D4");

BENCHMARK_MAIN();
