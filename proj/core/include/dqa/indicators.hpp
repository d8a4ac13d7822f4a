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
#include <vector>

#include "dqa/histogram.hpp"

namespace dqa {

struct IndicatorConfig {
    // Head fraction for left-skewedness, in percent of the class count.
    double skew_k_percent = 5.0;
    // Long-tail sample thresholds, strictly decreasing.
    std::vector<std::uint64_t> tail_thresholds = {500, 100};

    void validate() const;  // throws DataError on out-of-range parameters
    bool operator==(const IndicatorConfig&) const = default;
};

struct IndicatorReport {
    std::uint64_t label_set_size = 0;
    std::uint64_t total_samples = 0;
    std::uint64_t per_class_min = 0;
    std::uint64_t per_class_max = 0;
    double per_class_mean = 0.0;
    double left_skew = 0.0;  // percent
    // (threshold, percent-of-classes-below) pairs, config order
    std::vector<std::pair<std::uint64_t, double>> long_tail;
    IndicatorConfig config;

    double long_tail_at(std::uint64_t k) const;  // throws DataError if k absent
};

// Percentage of samples belonging to the most common k% of classes.
// Head size m = max(1, round-half-up(k_percent/100 * C)); head membership is
// decided by count descending, then class id ascending. 5.0 for a perfectly
// balanced dataset at k=5.
double left_skewedness(const ClassHistogram& h, double k_percent);

// Percentage of classes with strictly fewer than k samples. Declared
// zero-count classes sit below every threshold.
double long_tailedness(const ClassHistogram& h, std::uint64_t k);

// All indicators in one pass; O(C log C) time, O(C) memory.
IndicatorReport audit(const ClassHistogram& h, const IndicatorConfig& cfg);

// Sorted-key JSON with percentages rounded to 4 decimal places.
std::string report_to_json(const IndicatorReport& r);
IndicatorReport report_from_json(const std::string& text);

}  // namespace dqa
