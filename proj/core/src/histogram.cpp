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

#include "dqa/histogram.hpp"

#include <limits>

#include "json.hpp"

namespace dqa {
namespace {

void checked_add(std::uint64_t& dst, std::uint64_t v) {
    if (dst > std::numeric_limits<std::uint64_t>::max() - v)
        throw DataError("histogram count overflow");
    dst += v;
}

}  // namespace

void HistogramBuilder::add(const SampleRecord& r) {
    if (all_labels_) {
        for (const auto& l : r.labels) add_class(l, 1);
    } else {
        add_class(r.primary_label(), 1);
    }
}

void HistogramBuilder::add_class(const std::string& cls, std::uint64_t count) {
    checked_add(h_.counts[cls], count);
    checked_add(h_.total_samples, count);
}

void HistogramBuilder::declare_class(const std::string& cls) { h_.counts.try_emplace(cls, 0); }

ClassHistogram HistogramBuilder::take() { return std::move(h_); }

ClassHistogram build_histogram(const Manifest& m, bool all_labels) {
    HistogramBuilder b(all_labels);
    for (const auto& r : m.records) b.add(r);
    if (m.declared_labels)
        for (const auto& cls : *m.declared_labels) b.declare_class(cls);
    return b.take();
}

ClassHistogram merge(const ClassHistogram& a, const ClassHistogram& b) {
    ClassHistogram out = a;
    for (const auto& [cls, count] : b.counts) checked_add(out.counts[cls], count);
    checked_add(out.total_samples, b.total_samples);
    return out;
}

std::string histogram_to_json(const ClassHistogram& h) {
    nlohmann::json j;
    j["counts"] = nlohmann::json::object();
    for (const auto& [cls, count] : h.counts) j["counts"][cls] = count;
    j["total"] = h.total_samples;
    j["label_set_size"] = h.label_set_size();
    return j.dump();
}

ClassHistogram histogram_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("malformed histogram JSON: ") + e.what());
    }
    ClassHistogram h;
    if (!j.is_object() || !j.contains("counts") || !j["counts"].is_object())
        throw DataError("histogram JSON must have a \"counts\" object");
    for (const auto& [cls, count] : j["counts"].items()) {
        if (!count.is_number_unsigned())
            throw DataError("histogram count for \"" + cls + "\" is not a non-negative integer");
        h.counts[cls] = count.get<std::uint64_t>();
    }
    for (const auto& [cls, count] : h.counts) checked_add(h.total_samples, count);
    if (j.contains("total") && j["total"].get<std::uint64_t>() != h.total_samples)
        throw DataError("histogram JSON total does not match the sum of counts");
    return h;
}

}  // namespace dqa
