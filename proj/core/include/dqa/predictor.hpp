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
#include <optional>
#include <string>
#include <vector>

#include "dqa/indicators.hpp"

namespace dqa {

struct CandidateEntry {
    std::string name;
    IndicatorReport report;
    std::optional<double> observed_accuracy;    // validation-set accuracy, percent
    std::optional<double> observed_robustness;  // mean accuracy under shift, percent
};

// Best-first ranked groups of candidate indices. The ranking key is the
// long-tail values at each configured threshold ascending (largest threshold
// first), then total samples descending. Left-skew is deliberately not part
// of the key: it does not predict accuracy. Candidates indistinguishable on
// the full key share a group rather than being ordered arbitrarily.
// All reports must carry the same IndicatorConfig.
std::vector<std::vector<std::size_t>> predict_order(
    const std::vector<CandidateEntry>& candidates);

struct ConcordanceStats {
    std::uint64_t concordant_pairs = 0;
    std::uint64_t discordant_pairs = 0;
    double kendall_tau_b = 0.0;
};

// Pairwise agreement between an indicator (hypothesized higher-is-worse) and
// observed accuracies. A pair is concordant when the strictly higher
// indicator goes with strictly lower accuracy, discordant when it goes with
// strictly higher accuracy; ties on either coordinate are neither. tau_b is
// (concordant - discordant) / sqrt((n0 - t_ind)(n0 - t_acc)), so +1 means
// perfect agreement with the higher-is-worse hypothesis.
ConcordanceStats concordance(const std::vector<double>& indicator_values,
                             const std::vector<double>& accuracies);

}  // namespace dqa
