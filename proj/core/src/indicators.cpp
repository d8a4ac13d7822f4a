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

#include "dqa/indicators.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace dqa {
namespace {

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::uint64_t head_class_count(double k_percent, std::uint64_t c) {
    // round half up on k% of C, floor at one class
    auto m = static_cast<std::uint64_t>(
        std::floor(static_cast<long double>(k_percent) * c / 100.0L + 0.5L));
    return std::max<std::uint64_t>(1, m);
}

}  // namespace

void IndicatorConfig::validate() const {
    if (!(skew_k_percent > 0.0) || skew_k_percent > 100.0)
        throw DataError("skew_k_percent must be in (0, 100]");
    if (tail_thresholds.empty()) throw DataError("at least one tail threshold is required");
    for (std::size_t i = 0; i < tail_thresholds.size(); ++i) {
        if (tail_thresholds[i] == 0) throw DataError("tail thresholds must be positive");
        if (i > 0 && tail_thresholds[i] >= tail_thresholds[i - 1])
            throw DataError("tail thresholds must be strictly decreasing");
    }
}

double IndicatorReport::long_tail_at(std::uint64_t k) const {
    for (const auto& [threshold, value] : long_tail)
        if (threshold == k) return value;
    throw DataError("report has no long-tail value at threshold " + std::to_string(k));
}

double left_skewedness(const ClassHistogram& h, double k_percent) {
    if (h.empty() || h.total_samples == 0)
        throw DataError("left-skewedness is undefined on an empty dataset");

    std::vector<const std::pair<const std::string, std::uint64_t>*> by_count;
    by_count.reserve(h.counts.size());
    for (const auto& entry : h.counts) by_count.push_back(&entry);
    std::sort(by_count.begin(), by_count.end(), [](const auto* a, const auto* b) {
        if (a->second != b->second) return a->second > b->second;
        return a->first < b->first;
    });

    std::uint64_t m = std::min<std::uint64_t>(head_class_count(k_percent, by_count.size()),
                                              by_count.size());
    std::uint64_t head = 0;
    for (std::uint64_t i = 0; i < m; ++i) head += by_count[i]->second;
    return 100.0 * static_cast<double>(head) / static_cast<double>(h.total_samples);
}

double long_tailedness(const ClassHistogram& h, std::uint64_t k) {
    if (h.empty()) throw DataError("long-tailedness is undefined on an empty dataset");
    std::uint64_t below = 0;
    for (const auto& [cls, count] : h.counts)
        if (count < k) ++below;
    return 100.0 * static_cast<double>(below) / static_cast<double>(h.label_set_size());
}

IndicatorReport audit(const ClassHistogram& h, const IndicatorConfig& cfg) {
    cfg.validate();
    if (h.empty() || h.total_samples == 0)
        throw DataError("audit is undefined on an empty dataset");

    IndicatorReport r;
    r.config = cfg;
    r.label_set_size = h.label_set_size();
    r.total_samples = h.total_samples;
    r.per_class_min = std::uint64_t(-1);
    for (const auto& [cls, count] : h.counts) {
        r.per_class_min = std::min(r.per_class_min, count);
        r.per_class_max = std::max(r.per_class_max, count);
    }
    r.per_class_mean =
        static_cast<double>(h.total_samples) / static_cast<double>(r.label_set_size);
    r.left_skew = left_skewedness(h, cfg.skew_k_percent);
    for (std::uint64_t k : cfg.tail_thresholds)
        r.long_tail.emplace_back(k, long_tailedness(h, k));
    return r;
}

std::string report_to_json(const IndicatorReport& r) {
    nlohmann::json j;
    j["config"]["skew_k_percent"] = r.config.skew_k_percent;
    j["config"]["tail_thresholds"] = r.config.tail_thresholds;
    j["label_set_size"] = r.label_set_size;
    j["total_samples"] = r.total_samples;
    j["per_class_min"] = r.per_class_min;
    j["per_class_max"] = r.per_class_max;
    j["per_class_mean"] = round4(r.per_class_mean);
    j["left_skew"] = round4(r.left_skew);
    j["long_tail"] = nlohmann::json::object();
    for (const auto& [k, v] : r.long_tail) j["long_tail"][std::to_string(k)] = round4(v);
    return j.dump();
}

IndicatorReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("malformed report JSON: ") + e.what());
    }
    IndicatorReport r;
    try {
        r.config.skew_k_percent = j.at("config").at("skew_k_percent").get<double>();
        r.config.tail_thresholds =
            j.at("config").at("tail_thresholds").get<std::vector<std::uint64_t>>();
        r.label_set_size = j.at("label_set_size").get<std::uint64_t>();
        r.total_samples = j.at("total_samples").get<std::uint64_t>();
        r.per_class_min = j.at("per_class_min").get<std::uint64_t>();
        r.per_class_max = j.at("per_class_max").get<std::uint64_t>();
        r.per_class_mean = j.at("per_class_mean").get<double>();
        r.left_skew = j.at("left_skew").get<double>();
        for (std::uint64_t k : r.config.tail_thresholds)
            r.long_tail.emplace_back(
                k, j.at("long_tail").at(std::to_string(k)).get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("report JSON is missing fields: ") + e.what());
    }
    r.config.validate();
    return r;
}

}  // namespace dqa
