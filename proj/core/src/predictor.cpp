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

#include "dqa/predictor.hpp"

#include <algorithm>
#include <cmath>

namespace dqa {
namespace {

// smaller key = better predicted quality
struct RankKey {
    std::vector<double> tail_values;     // ascending is better
    std::uint64_t total_samples;

    bool operator==(const RankKey&) const = default;
    bool operator<(const RankKey& o) const {
        if (tail_values != o.tail_values) return tail_values < o.tail_values;
        return total_samples > o.total_samples;  // more data is better
    }
};

RankKey make_key(const CandidateEntry& c) {
    RankKey key;
    for (const auto& [threshold, value] : c.report.long_tail)
        key.tail_values.push_back(value);
    key.total_samples = c.report.total_samples;
    return key;
}

}  // namespace

std::vector<std::vector<std::size_t>> predict_order(
    const std::vector<CandidateEntry>& candidates) {
    if (candidates.empty()) throw DataError("predict_order needs at least one candidate");
    for (const auto& c : candidates)
        if (!(c.report.config == candidates.front().report.config))
            throw DataError("candidate \"" + c.name +
                            "\" was audited with a different indicator config");

    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<RankKey> keys;
    keys.reserve(candidates.size());
    for (const auto& c : candidates) keys.push_back(make_key(c));

    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (!(keys[a] == keys[b])) return keys[a] < keys[b];
        return candidates[a].name < candidates[b].name;  // stable display order
    });

    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i : order) {
        if (groups.empty() || !(keys[groups.back().front()] == keys[i]))
            groups.emplace_back();
        groups.back().push_back(i);
    }
    return groups;
}

ConcordanceStats concordance(const std::vector<double>& indicator_values,
                             const std::vector<double>& accuracies) {
    if (indicator_values.size() != accuracies.size())
        throw DataError("concordance input lists differ in length");
    const std::size_t n = indicator_values.size();
    if (n < 2) throw DataError("concordance needs at least two candidates");

    std::uint64_t concordant = 0, discordant = 0, ties_ind = 0, ties_acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool tie_x = indicator_values[i] == indicator_values[j];
            bool tie_y = accuracies[i] == accuracies[j];
            if (tie_x) ++ties_ind;
            if (tie_y) ++ties_acc;
            if (tie_x || tie_y) continue;
            bool higher_ind = indicator_values[i] > indicator_values[j];
            bool lower_acc = accuracies[i] < accuracies[j];
            // higher indicator is hypothesized worse
            if (higher_ind == lower_acc)
                ++concordant;
            else
                ++discordant;
        }
    }

    ConcordanceStats stats;
    stats.concordant_pairs = concordant;
    stats.discordant_pairs = discordant;
    const double n0 = static_cast<double>(n) * (n - 1) / 2.0;
    double denom = std::sqrt((n0 - ties_ind) * (n0 - ties_acc));
    stats.kendall_tau_b =
        denom > 0.0 ? (static_cast<double>(concordant) - static_cast<double>(discordant)) /
                          denom
                    : 0.0;
    return stats;
}

}  // namespace dqa
