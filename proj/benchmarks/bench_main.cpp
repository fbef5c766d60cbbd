// Throughput benchmarks for the hot paths: page encoding, feature
// extraction, and the clustering pipeline.

#include "scripta/cluster.hpp"
#include "scripta/coder.hpp"
#include "scripta/eval.hpp"
#include "scripta/synth.hpp"
#include "scripta/texture.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace scripta;

namespace {

std::vector<int> random_codes(std::uint64_t seed, int len) {
    std::mt19937_64 rng(seed);
    std::vector<int> codes(len);
    for (auto& c : codes) c = static_cast<int>(rng() % 4);
    return codes;
}

std::vector<FeatureVector> benchmark_features() {
    auto docs = generate_coded_corpus(separable_benchmark_spec(1));
    std::vector<FeatureVector> raw;
    for (const auto& doc : docs) raw.push_back(extract_features(doc.text, FeatureMode::Concat));
    return normalize_corpus(raw);
}

void BM_RunLengthFeatures(benchmark::State& state) {
    auto codes = random_codes(3, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_length_features(run_length_matrix(codes)));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunLengthFeatures)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_AlbpHistogram(benchmark::State& state) {
    auto codes = random_codes(5, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(albp_histogram(codes));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AlbpHistogram)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_EncodePage(benchmark::State& state) {
    CodedText text;
    text.doc_id = "bench";
    text.codes = random_codes(7, static_cast<int>(state.range(0)));
    PageLayout layout;
    auto page = render_page(text, layout);
    for (auto _ : state) benchmark::DoNotOptimize(encode_document(page));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EncodePage)->Arg(500)->Arg(2000);

void BM_RenderPage(benchmark::State& state) {
    CodedText text;
    text.doc_id = "bench";
    text.codes = random_codes(11, static_cast<int>(state.range(0)));
    PageLayout layout;
    for (auto _ : state) benchmark::DoNotOptimize(render_page(text, layout));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RenderPage)->Arg(500)->Arg(2000);

void BM_ClusterDocuments(benchmark::State& state) {
    auto features = benchmark_features();
    ClusterConfig config;
    config.k = 3;
    config.h = 4;
    for (auto _ : state) {
        config.ga.seed = static_cast<std::uint64_t>(state.iterations());
        benchmark::DoNotOptimize(cluster_documents(features, config));
    }
}
BENCHMARK(BM_ClusterDocuments);

void BM_KMeansBaseline(benchmark::State& state) {
    auto features = benchmark_features();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kmeans_baseline(features, 3, static_cast<std::uint64_t>(state.iterations())));
}
BENCHMARK(BM_KMeansBaseline);

} // namespace

BENCHMARK_MAIN();
