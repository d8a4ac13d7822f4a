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
#include <map>
#include <string>

#include "dqa/manifest.hpp"

namespace dqa {

// Per-class sample counts. Classes declared but never seen are present with
// count 0 and count toward the label set size.
struct ClassHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total_samples = 0;

    std::uint64_t label_set_size() const { return counts.size(); }
    bool empty() const { return counts.empty(); }

    bool operator==(const ClassHistogram&) const = default;
};

// Streaming accumulator; feed records one at a time, then take().
class HistogramBuilder {
public:
    explicit HistogramBuilder(bool all_labels = false) : all_labels_(all_labels) {}

    void add(const SampleRecord& r);
    void add_class(const std::string& cls, std::uint64_t count);
    void declare_class(const std::string& cls);  // ensures presence, count 0

    ClassHistogram take();

private:
    ClassHistogram h_;
    bool all_labels_ = false;
};

// In all-labels mode a sample contributes one count per label; by default
// only the first (primary) label counts.
ClassHistogram build_histogram(const Manifest& m, bool all_labels = false);

// Pointwise sum; label set is the union. (ClassHistogram, merge, {}) is a
// commutative monoid, which is what makes sharded builds exact.
ClassHistogram merge(const ClassHistogram& a, const ClassHistogram& b);

// {"counts": {...}, "total": N, "label_set_size": C}, keys sorted.
std::string histogram_to_json(const ClassHistogram& h);
ClassHistogram histogram_from_json(const std::string& text);

}  // namespace dqa
