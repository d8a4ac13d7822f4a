/*
 * Copyright 2026 The dqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dqa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "dqa/hash.hpp"

namespace dqa {
namespace {

std::string class_name(std::uint64_t rank, std::uint64_t num_classes) {
    int width = std::max<int>(4, std::to_string(num_classes).size());
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%0*llu", width, static_cast<unsigned long long>(rank));
    return buf;
}

std::string synthetic_id(const std::string& cls, std::uint64_t index, std::uint64_t seed) {
    char idx[16];
    std::snprintf(idx, sizeof idx, "%08llu", static_cast<unsigned long long>(index));
    std::uint64_t suffix = sample_rank(seed, cls, idx) & 0xffffffffULL;
    char tail[16];
    std::snprintf(tail, sizeof tail, "%08llx", static_cast<unsigned long long>(suffix));
    return cls + "/" + idx + "-" + tail;
}

SampleRecord synthetic_record(const std::string& cls, std::uint64_t index,
                              std::uint64_t seed) {
    return SampleRecord{synthetic_id(cls, index, seed), {cls}, std::string("synth")};
}

}  // namespace

void ZipfSpec::validate() const {
    if (num_classes == 0) throw DataError("zipf spec needs at least one class");
    if (exponent < 0.0) throw DataError("zipf exponent must be non-negative");
}

ClassHistogram zipf_histogram(const ZipfSpec& spec) {
    spec.validate();
    const std::uint64_t c = spec.num_classes;
    const std::uint64_t n = spec.total_samples;

    std::vector<long double> weight(c);
    long double weight_sum = 0.0L;
    for (std::uint64_t r = 0; r < c; ++r) {
        weight[r] = std::pow(static_cast<long double>(r + 1), -(long double)spec.exponent);
        weight_sum += weight[r];
    }

    // largest-remainder apportionment: floor the quotas, then hand the
    // leftover samples to the largest fractional parts, ties to lower rank
    std::vector<std::uint64_t> count(c);
    std::vector<std::pair<long double, std::uint64_t>> remainder(c);
    std::uint64_t assigned = 0;
    for (std::uint64_t r = 0; r < c; ++r) {
        long double quota = n * weight[r] / weight_sum;
        count[r] = static_cast<std::uint64_t>(std::floor(quota));
        remainder[r] = {quota - count[r], r};
        assigned += count[r];
    }
    std::sort(remainder.begin(), remainder.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::uint64_t i = 0; assigned < n; ++i, ++assigned) ++count[remainder[i].second];

    ClassHistogram h;
    for (std::uint64_t r = 0; r < c; ++r) h.counts[class_name(r + 1, c)] = count[r];
    h.total_samples = n;
    return h;
}

Manifest balanced_manifest(std::uint64_t num_classes, std::uint64_t per_class,
                           std::uint64_t seed) {
    if (num_classes == 0 || per_class == 0)
        throw DataError("balanced manifest needs positive class count and size");
    ClassHistogram h;
    for (std::uint64_t r = 1; r <= num_classes; ++r)
        h.counts[class_name(r, num_classes)] = per_class;
    h.total_samples = num_classes * per_class;
    return manifest_from_histogram(h, seed);
}

Manifest manifest_from_histogram(const ClassHistogram& h, std::uint64_t seed) {
    Manifest m;
    m.records.reserve(h.total_samples);
    bool has_empty_class = false;
    for (const auto& [cls, count] : h.counts) {
        if (count == 0) has_empty_class = true;
        for (std::uint64_t i = 0; i < count; ++i)
            m.records.push_back(synthetic_record(cls, i, seed));
    }
    if (has_empty_class) {
        std::vector<std::string> declared;
        for (const auto& [cls, count] : h.counts) declared.push_back(cls);
        m.declared_labels = std::move(declared);
    }
    return m;
}

void emit_synthetic_jsonl(const ClassHistogram& h, std::uint64_t seed, std::ostream& out) {
    // zero-padded indices make generation order the canonical order
    for (const auto& [cls, count] : h.counts)
        for (std::uint64_t i = 0; i < count; ++i)
            out << record_to_jsonl(synthetic_record(cls, i, seed)) << '\n';
}

}  // namespace dqa
