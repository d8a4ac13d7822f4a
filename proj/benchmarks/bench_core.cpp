// Copyright 2026 The dqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "dqa/hash.hpp"
#include "dqa/histogram.hpp"
#include "dqa/indicators.hpp"
#include "dqa/manifest.hpp"
#include "dqa/synth.hpp"

namespace {

dqa::ClassHistogram random_histogram(std::size_t classes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    dqa::ClassHistogram h;
    for (std::size_t c = 0; c < classes; ++c) {
        std::uint64_t n = rng() % 10000;
        h.counts["class" + std::to_string(c)] = n;
        h.total_samples += n;
    }
    return h;
}

void BM_SampleRank(benchmark::State& state) {
    std::uint64_t acc = 0;
    std::uint64_t i = 0;
    for (auto _ : state) {
        acc ^= dqa::sample_rank(42, "some-class-name", "record-" + std::to_string(i++));
    }
    benchmark::DoNotOptimize(acc);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SampleRank);

void BM_HistogramBuild(benchmark::State& state) {
    dqa::Manifest m = dqa::balanced_manifest(100, static_cast<std::uint64_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqa::build_histogram(m));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.records.size()));
}
BENCHMARK(BM_HistogramBuild)->Arg(100)->Arg(1000);

void BM_HistogramMerge(benchmark::State& state) {
    dqa::ClassHistogram a = random_histogram(static_cast<std::size_t>(state.range(0)), 1);
    dqa::ClassHistogram b = random_histogram(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqa::merge(a, b));
    }
}
BENCHMARK(BM_HistogramMerge)->Arg(100)->Arg(10000);

void BM_Audit(benchmark::State& state) {
    dqa::ClassHistogram h = random_histogram(static_cast<std::size_t>(state.range(0)), 3);
    dqa::IndicatorConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqa::audit(h, cfg));
    }
}
BENCHMARK(BM_Audit)->Arg(100)->Arg(10000);

void BM_ZipfHistogram(benchmark::State& state) {
    dqa::ZipfSpec spec{static_cast<std::uint64_t>(state.range(0)), 10'000'000, 1.0, 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqa::zipf_histogram(spec));
    }
}
BENCHMARK(BM_ZipfHistogram)->Arg(1000)->Arg(100000);

void BM_JsonlParse(benchmark::State& state) {
    auto path = std::filesystem::temp_directory_path() / "dqa_bench_parse.jsonl";
    {
        std::ofstream os(path, std::ios::binary);
        dqa::emit_synthetic_jsonl(dqa::zipf_histogram({50, 20000, 1.0, 0}), 7, os);
    }
    std::uintmax_t bytes = std::filesystem::file_size(path);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqa::parse_manifest(path, dqa::ManifestFormat::jsonl));
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
    std::filesystem::remove(path);
}
BENCHMARK(BM_JsonlParse);

}  // namespace

BENCHMARK_MAIN();
