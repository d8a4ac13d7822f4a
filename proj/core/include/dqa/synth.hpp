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

#pragma once

#include <cstdint>
#include <iosfwd>

#include "dqa/histogram.hpp"
#include "dqa/manifest.hpp"

namespace dqa {

// Rank-frequency histogram spec: class at rank r gets weight r^-exponent.
struct ZipfSpec {
    std::uint64_t num_classes = 1;
    std::uint64_t total_samples = 0;
    double exponent = 1.0;  // 0 gives a balanced histogram
    std::uint64_t seed = 0;

    void validate() const;
};

// Counts are apportioned to sum to exactly total_samples via largest
// remainder (ties to the lower rank). Class ids are "c0001", "c0002", ... in
// rank order. exponent 0 degenerates to a balanced histogram.
ClassHistogram zipf_histogram(const ZipfSpec& spec);

// C classes x per_class records each. Ids carry a seed-keyed hash suffix so
// hash-rank sampling over synthetic data stays non-degenerate.
Manifest balanced_manifest(std::uint64_t num_classes, std::uint64_t per_class,
                           std::uint64_t seed);

// Synthetic records realizing exactly the given counts.
Manifest manifest_from_histogram(const ClassHistogram& h, std::uint64_t seed);

// Streams the same records as manifest_from_histogram directly to `out` in
// canonical JSONL order, with memory independent of the total sample count.
void emit_synthetic_jsonl(const ClassHistogram& h, std::uint64_t seed, std::ostream& out);

}  // namespace dqa
