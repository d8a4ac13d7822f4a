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

#include "dqa/transforms.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "dqa/hash.hpp"

namespace dqa {
namespace {

using nlohmann::json;

// indices of m.records grouped by primary label
std::map<std::string, std::vector<std::size_t>> group_by_class(const Manifest& m) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m.records.size(); ++i)
        groups[m.records[i].primary_label()].push_back(i);
    return groups;
}

// the n members with the smallest (rank, id); order of `indices` is irrelevant
std::vector<std::size_t> select_by_rank(const Manifest& m, const std::string& cls,
                                        std::vector<std::size_t> indices, std::uint64_t n,
                                        std::uint64_t seed) {
    auto key = [&](std::size_t i) {
        return std::make_pair(sample_rank(seed, cls, m.records[i].id), m.records[i].id);
    };
    std::sort(indices.begin(), indices.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    if (indices.size() > n) indices.resize(n);
    return indices;
}

// shared mechanics of v_scale and truncate_head
Manifest cap_classes(const Manifest& m, std::uint64_t cap, std::uint64_t seed,
                     TransformSummary* summary, bool warn_small) {
    Manifest out;
    out.declared_labels = m.declared_labels;
    std::uint64_t small_classes = 0;
    for (auto& [cls, indices] : group_by_class(m)) {
        if (indices.size() <= cap) {
            if (indices.size() < cap) ++small_classes;
            for (std::size_t i : indices) out.records.push_back(m.records[i]);
            continue;
        }
        if (summary) {
            ++summary->classes_touched;
            summary->samples_dropped += indices.size() - cap;
        }
        for (std::size_t i : select_by_rank(m, cls, std::move(indices), cap, seed))
            out.records.push_back(m.records[i]);
    }
    if (summary) {
        if (m.records.empty())
            summary->warnings.push_back("input manifest is empty; output is empty");
        if (warn_small && small_classes > 0)
            summary->warnings.push_back(std::to_string(small_classes) +
                                        " class(es) below the target were kept whole");
    }
    return out;
}

std::unordered_set<std::string> label_vocabulary(const Manifest& m) {
    std::unordered_set<std::string> vocab;
    for (const auto& r : m.records)
        for (const auto& l : r.labels) vocab.insert(l);
    if (m.declared_labels)
        vocab.insert(m.declared_labels->begin(), m.declared_labels->end());
    return vocab;
}

}  // namespace

std::string TransformSummary::to_json() const {
    json j;
    j["kind"] = kind;
    j["classes_touched"] = classes_touched;
    j["samples_dropped"] = samples_dropped;
    j["samples_added"] = samples_added;
    j["duplicates_dropped"] = duplicates_dropped;
    j["warnings"] = warnings;
    return j.dump();
}

Manifest v_scale(const Manifest& m, std::uint64_t per_class_target, std::uint64_t seed,
                 TransformSummary* summary) {
    if (per_class_target == 0) throw DataError("v_scale target must be positive");
    if (summary) summary->kind = "v_scale";
    return cap_classes(m, per_class_target, seed, summary, /*warn_small=*/true);
}

Manifest truncate_head(const Manifest& m, std::uint64_t cap, std::uint64_t seed,
                       TransformSummary* summary) {
    if (cap == 0) throw DataError("truncate_head cap must be positive");
    if (summary) summary->kind = "truncate_head";
    return cap_classes(m, cap, seed, summary, /*warn_small=*/false);
}

Manifest h_scale(const Manifest& base, const Manifest& donor,
                 std::uint64_t num_extra_classes, std::uint64_t per_class_cap,
                 std::uint64_t seed, TransformSummary* summary) {
    if (num_extra_classes == 0) throw DataError("h_scale needs a positive class count");
    if (per_class_cap == 0) throw DataError("h_scale needs a positive per-class cap");
    if (summary) summary->kind = "h_scale";

    auto base_vocab = label_vocabulary(base);
    auto donor_groups = group_by_class(donor);

    // candidate donor classes: non-overlapping, non-empty; largest first
    std::vector<std::pair<std::string, std::size_t>> candidates;
    for (const auto& [cls, indices] : donor_groups)
        if (!base_vocab.contains(cls) && !indices.empty())
            candidates.emplace_back(cls, indices.size());
    if (candidates.size() < num_extra_classes)
        throw DataError("donor has only " + std::to_string(candidates.size()) +
                        " non-overlapping classes; " + std::to_string(num_extra_classes) +
                        " requested (short by " +
                        std::to_string(num_extra_classes - candidates.size()) + ")");
    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    candidates.resize(num_extra_classes);

    Manifest out;
    out.records = base.records;
    std::unordered_set<std::string> base_ids;
    base_ids.reserve(base.records.size());
    for (const auto& r : base.records) base_ids.insert(r.id);

    for (const auto& [cls, size] : candidates) {
        std::uint64_t added = 0;
        for (std::size_t i :
             select_by_rank(donor, cls, donor_groups[cls], per_class_cap, seed)) {
            const SampleRecord& r = donor.records[i];
            if (base_ids.contains(r.id)) {
                if (summary) {
                    ++summary->duplicates_dropped;
                    summary->warnings.push_back("donor record \"" + r.id +
                                                "\" collides with a base id; skipped");
                }
                continue;
            }
            out.records.push_back(r);
            ++added;
        }
        if (summary) {
            ++summary->classes_touched;
            summary->samples_added += added;
        }
    }

    if (base.declared_labels) {
        auto declared = *base.declared_labels;
        for (const auto& [cls, size] : candidates) declared.push_back(cls);
        std::sort(declared.begin(), declared.end());
        declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
        out.declared_labels = std::move(declared);
    }
    return out;
}

Manifest rebalance_tail(const Manifest& m, std::uint64_t k, const Manifest& donor,
                        std::uint64_t seed, TransformSummary* summary) {
    if (k == 0) throw DataError("rebalance_tail threshold must be positive");
    if (summary) summary->kind = "rebalance_tail";

    Manifest out;
    out.records = m.records;
    out.declared_labels = m.declared_labels;
    if (m.records.empty() && !m.declared_labels) {
        if (summary)
            summary->warnings.push_back("input manifest is empty; nothing to rebalance");
        return out;
    }

    std::unordered_set<std::string> used_ids;
    used_ids.reserve(m.records.size());
    for (const auto& r : m.records) used_ids.insert(r.id);

    auto groups = group_by_class(m);
    if (m.declared_labels)
        for (const auto& cls : *m.declared_labels) groups.try_emplace(cls);
    auto donor_groups = group_by_class(donor);

    for (auto& [cls, indices] : groups) {
        if (indices.size() >= k) continue;
        std::uint64_t deficit = k - indices.size();

        std::vector<std::size_t> candidates;
        if (auto it = donor_groups.find(cls); it != donor_groups.end())
            for (std::size_t i : it->second)
                if (!used_ids.contains(donor.records[i].id)) candidates.push_back(i);

        if (candidates.empty()) {
            if (summary)
                summary->warnings.push_back("class \"" + cls +
                                            "\" is below the threshold and the donor has "
                                            "no unused samples for it");
            continue;
        }
        auto chosen = select_by_rank(donor, cls, std::move(candidates), deficit, seed);
        for (std::size_t i : chosen) {
            out.records.push_back(donor.records[i]);
            used_ids.insert(donor.records[i].id);
        }
        if (summary) {
            ++summary->classes_touched;
            summary->samples_added += chosen.size();
            if (chosen.size() < deficit)
                summary->warnings.push_back("class \"" + cls + "\" raised by " +
                                            std::to_string(chosen.size()) +
                                            " but remains below the threshold");
        }
    }
    return out;
}

Manifest blend(const std::vector<Manifest>& sources, std::uint64_t /*seed*/,
               TransformSummary* summary) {
    if (sources.empty()) throw DataError("blend needs at least one source");
    if (summary) summary->kind = "blend";

    Manifest out;
    std::unordered_map<std::string, std::uint64_t> seen;  // id -> content hash
    bool any_declared = false;
    std::vector<std::string> declared;
    for (const auto& src : sources) {
        for (const auto& r : src.records) {
            auto [it, inserted] = seen.try_emplace(r.id, record_content_hash(r));
            if (!inserted) {
                if (it->second != record_content_hash(r))
                    throw DataError("blend sources disagree on id \"" + r.id + "\"");
                ++out.duplicates_dropped;
                if (summary) ++summary->duplicates_dropped;
                continue;
            }
            out.records.push_back(r);
        }
        if (src.declared_labels) {
            any_declared = true;
            declared.insert(declared.end(), src.declared_labels->begin(),
                            src.declared_labels->end());
        }
    }
    if (any_declared) {
        std::sort(declared.begin(), declared.end());
        declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
        out.declared_labels = std::move(declared);
    }
    return out;
}

std::string_view transform_kind_name(TransformKind k) {
    switch (k) {
        case TransformKind::v_scale: return "v_scale";
        case TransformKind::h_scale: return "h_scale";
        case TransformKind::truncate_head: return "truncate_head";
        case TransformKind::rebalance_tail: return "rebalance_tail";
        case TransformKind::blend: return "blend";
    }
    return "?";
}

namespace {

std::uint64_t positive_param(const json& params, const char* name) {
    if (!params.contains(name) || !params[name].is_number_unsigned() ||
        params[name].get<std::uint64_t>() == 0)
        throw DataError(std::string("transform parameter \"") + name +
                        "\" must be a positive integer");
    return params[name].get<std::uint64_t>();
}

}  // namespace

TransformSpec TransformSpec::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed transform plan: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw DataError("transform plan needs a string \"kind\"");

    TransformSpec spec;
    std::string kind = j["kind"].get<std::string>();
    json params = j.value("params", json::object());
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw DataError("transform seed must be a non-negative integer");
        spec.seed = j["seed"].get<std::uint64_t>();
    }

    if (kind == "v_scale") {
        spec.kind = TransformKind::v_scale;
        spec.per_class_target = positive_param(params, "per_class_target");
    } else if (kind == "truncate_head") {
        spec.kind = TransformKind::truncate_head;
        spec.cap = positive_param(params, "cap");
    } else if (kind == "h_scale") {
        spec.kind = TransformKind::h_scale;
        spec.num_extra_classes = positive_param(params, "num_extra_classes");
        spec.cap = positive_param(params, "per_class_cap");
    } else if (kind == "rebalance_tail") {
        spec.kind = TransformKind::rebalance_tail;
        spec.tail_k = positive_param(params, "k");
    } else if (kind == "blend") {
        spec.kind = TransformKind::blend;
    } else {
        throw DataError("unknown transform kind \"" + kind + "\"");
    }
    return spec;
}

std::string TransformSpec::to_json() const {
    json params = json::object();
    switch (kind) {
        case TransformKind::v_scale: params["per_class_target"] = per_class_target; break;
        case TransformKind::truncate_head: params["cap"] = cap; break;
        case TransformKind::h_scale:
            params["num_extra_classes"] = num_extra_classes;
            params["per_class_cap"] = cap;
            break;
        case TransformKind::rebalance_tail: params["k"] = tail_k; break;
        case TransformKind::blend: break;
    }
    json j;
    j["kind"] = transform_kind_name(kind);
    j["params"] = params;
    j["seed"] = seed;
    return j.dump();
}

Manifest TransformSpec::apply(const Manifest& input, const std::vector<Manifest>& donors,
                              TransformSummary* summary) const {
    if (needs_donor() && donors.size() != 1)
        throw DataError(std::string(transform_kind_name(kind)) +
                        " needs exactly one donor manifest");
    if (!needs_donor() && kind != TransformKind::blend && !donors.empty())
        throw DataError(std::string(transform_kind_name(kind)) +
                        " does not take a donor manifest");

    switch (kind) {
        case TransformKind::v_scale: return v_scale(input, per_class_target, seed, summary);
        case TransformKind::truncate_head: return truncate_head(input, cap, seed, summary);
        case TransformKind::h_scale:
            return h_scale(input, donors[0], num_extra_classes, cap, seed, summary);
        case TransformKind::rebalance_tail:
            return rebalance_tail(input, tail_k, donors[0], seed, summary);
        case TransformKind::blend: {
            std::vector<Manifest> sources;
            sources.push_back(input);
            for (const auto& d : donors) sources.push_back(d);
            return blend(sources, seed, summary);
        }
    }
    throw DataError("unreachable transform kind");
}

}  // namespace dqa
