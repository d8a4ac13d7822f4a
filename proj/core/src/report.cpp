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

#include "dqa/report.hpp"

#include <sys/resource.h>

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace dqa {
namespace {

std::string fmt_pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string AuditReportDocument::to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["inputs"] = inputs;
    j["format"] = format;
    j["all_labels"] = all_labels;
    j["duplicates_dropped"] = duplicates_dropped;
    j["report"] = nlohmann::json::parse(report_to_json(report));
    j["warnings"] = warnings;
    if (stats) {
        j["stats"]["wall_seconds"] = stats->wall_seconds;
        j["stats"]["peak_rss_kb"] = stats->peak_rss_kb;
    }
    return j.dump(2) + "\n";
}

std::string render_indicator_table(
    const std::vector<std::pair<std::string, IndicatorReport>>& rows) {
    std::size_t name_width = 7;  // "dataset"
    for (const auto& [name, r] : rows) name_width = std::max(name_width, name.size());

    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s %12s %8s %10s", static_cast<int>(name_width),
                  "dataset", "size", "classes", "left-skew");
    out << buf;
    if (!rows.empty())
        for (const auto& [k, v] : rows.front().second.long_tail) {
            std::snprintf(buf, sizeof buf, " %12s",
                          ("tail@" + std::to_string(k)).c_str());
            out << buf;
        }
    out << '\n';

    for (const auto& [name, r] : rows) {
        std::snprintf(buf, sizeof buf, "%-*s %12llu %8llu %9s%%",
                      static_cast<int>(name_width), name.c_str(),
                      static_cast<unsigned long long>(r.total_samples),
                      static_cast<unsigned long long>(r.label_set_size),
                      fmt_pct(r.left_skew).c_str());
        out << buf;
        for (const auto& [k, v] : r.long_tail) {
            std::snprintf(buf, sizeof buf, " %11s%%", fmt_pct(v).c_str());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string AuditReportDocument::to_text() const {
    std::string name = inputs.empty() ? "-" : inputs.front();
    std::string text = render_indicator_table({{name, report}});
    if (duplicates_dropped > 0)
        text += "duplicates dropped: " + std::to_string(duplicates_dropped) + "\n";
    for (const auto& w : warnings) text += "warning: " + w + "\n";
    if (stats) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "wall: %.2fs  peak rss: %llu KB\n",
                      stats->wall_seconds,
                      static_cast<unsigned long long>(stats->peak_rss_kb));
        text += buf;
    }
    return text;
}

std::uint64_t current_peak_rss_kb() {
    struct rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<std::uint64_t>(ru.ru_maxrss);
}

}  // namespace dqa
