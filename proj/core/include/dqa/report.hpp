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

#include <optional>
#include <string>
#include <vector>

#include "dqa/indicators.hpp"

namespace dqa {

struct RunStats {
    double wall_seconds = 0.0;
    std::uint64_t peak_rss_kb = 0;
};

// Everything one audit run produced. The JSON form has stable key ordering;
// run stats are opt-in so that default output stays byte-identical across
// repeated runs on the same input.
struct AuditReportDocument {
    std::string tool_version;
    std::vector<std::string> inputs;
    std::string format;
    bool all_labels = false;
    std::uint64_t duplicates_dropped = 0;
    IndicatorReport report;
    std::vector<std::string> warnings;
    std::optional<RunStats> stats;

    std::string to_json() const;
    std::string to_text() const;  // fixed-width table, one row per input set
};

// Fixed-width table of (name, report) rows with the columns of a dataset
// comparison: size, left-skew, and each long-tail threshold.
std::string render_indicator_table(
    const std::vector<std::pair<std::string, IndicatorReport>>& rows);

std::uint64_t current_peak_rss_kb();

}  // namespace dqa
