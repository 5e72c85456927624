#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "stancetree/econval.hpp"
#include "stancetree/grammar.hpp"
#include "stancetree/retrieval.hpp"
#include "stancetree/taxonomy.hpp"

namespace {

using namespace stancetree;

const Taxonomy& reference() {
  static const Taxonomy t = load_taxonomy_file(STANCETREE_SOURCE_DIR "/data/taxonomy/reference.json");
  return t;
}

constexpr const char* kParagraph =
    "Inflation remained well above the target and services inflation picked up, while wages grew "
    "strongly and the labour market remained tight. Housing credit growth slowed and business "
    "investment was weak.";

void BM_PhraseIndexBuild(benchmark::State& state) {
  const auto catalog = PhraseCatalog::from(reference());
  for (auto _ : state) {
    PhraseIndex index(catalog.phrases);
    benchmark::DoNotOptimize(index.avgdl());
  }
}
BENCHMARK(BM_PhraseIndexBuild);

void BM_Bm25Rank(benchmark::State& state) {
  const auto catalog = PhraseCatalog::from(reference());
  const PhraseIndex index(catalog.phrases);
  for (auto _ : state) {
    auto ranked = index.rank(kParagraph, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(ranked.data());
  }
}
BENCHMARK(BM_Bm25Rank)->Arg(10)->Arg(50);

void BM_CompileTaxonomy(benchmark::State& state) {
  const Taxonomy& t = reference();
  for (auto _ : state) {
    for (const auto& topic : t.topics) {
      auto g = compile_tree(topic);
      benchmark::DoNotOptimize(g.grammar_text.data());
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(t.topics.size()));
}
BENCHMARK(BM_CompileTaxonomy);

void BM_GrammarParse(benchmark::State& state) {
  const std::string text = compile_tree(reference().topics.front()).grammar_text;
  for (auto _ : state) {
    auto g = Grammar::parse(text);
    benchmark::DoNotOptimize(g.rules().data());
  }
}
BENCHMARK(BM_GrammarParse);

void BM_GrammarAccepts(benchmark::State& state) {
  const Grammar g = Grammar::parse(compile_tree(reference().topics.front()).grammar_text);
  const std::vector<std::string> language = g.enumerate();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.accepts(language[i++ % language.size()]));
  }
}
BENCHMARK(BM_GrammarAccepts);

void BM_OrderedLogitFit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(1e-12, 1.0 - 1e-12);
  econ::DesignMatrix x;
  x.columns = {"x1", "x2"};
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = normal(rng);
    const double b = normal(rng);
    x.rows.push_back({a, b});
    const double u = uniform(rng);
    const double latent = a - 0.5 * b + std::log(u / (1.0 - u));
    y.push_back(latent < -0.5 ? 1 : latent < 0.5 ? 2 : 3);
  }
  for (auto _ : state) {
    auto fit = econ::fit_ordered_logit(x, y);
    benchmark::DoNotOptimize(fit.log_likelihood);
  }
}
BENCHMARK(BM_OrderedLogitFit)->Arg(200)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
