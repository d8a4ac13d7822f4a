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
#include <string>
#include <vector>

#include "dqa/manifest.hpp"

namespace dqa {

// What a transform did, written alongside every output manifest.
struct TransformSummary {
    std::string kind;
    std::uint64_t classes_touched = 0;
    std::uint64_t samples_dropped = 0;
    std::uint64_t samples_added = 0;
    std::uint64_t duplicates_dropped = 0;
    std::vector<std::string> warnings;

    std::string to_json() const;
};

// All transforms are deterministic given (inputs, parameters, seed) and
// independent of input record order: per-class subsets are the n records
// with the smallest sample_rank(seed, class, id), ties by id. They never
// fabricate or duplicate samples.

// Caps every class at per_class_target samples; smaller classes are kept
// whole and reported in the summary.
Manifest v_scale(const Manifest& m, std::uint64_t per_class_target, std::uint64_t seed,
                 TransformSummary* summary = nullptr);

// Caps only classes above `cap`; same mechanics as v_scale but silent about
// small classes. Idempotent.
Manifest truncate_head(const Manifest& m, std::uint64_t cap, std::uint64_t seed,
                       TransformSummary* summary = nullptr);

// Grows the label set: appends the num_extra_classes largest donor classes
// that do not overlap the base vocabulary, each capped at per_class_cap.
// Throws DataError when the donor cannot supply enough disjoint classes.
Manifest h_scale(const Manifest& base, const Manifest& donor,
                 std::uint64_t num_extra_classes, std::uint64_t per_class_cap,
                 std::uint64_t seed, TransformSummary* summary = nullptr);

// Raises every class with fewer than k samples to min(k, count + donor
// availability) using unused donor samples; classes at or above k are
// untouched. Classes the donor cannot fill are reported as warnings.
Manifest rebalance_tail(const Manifest& m, std::uint64_t k, const Manifest& donor,
                        std::uint64_t seed, TransformSummary* summary = nullptr);

// Union of sources; exact-duplicate ids deduplicate (first source wins),
// conflicting ids throw.
Manifest blend(const std::vector<Manifest>& sources, std::uint64_t seed,
               TransformSummary* summary = nullptr);

enum class TransformKind { v_scale, h_scale, truncate_head, rebalance_tail, blend };

// Declarative plan entry: {"kind": ..., "params": {...}, "seed": int}.
// Parameters are validated at construction, before any data is read.
struct TransformSpec {
    TransformKind kind;
    std::uint64_t seed = 0;
    // kind-specific; unused fields stay zero
    std::uint64_t per_class_target = 0;   // v_scale
    std::uint64_t cap = 0;                // truncate_head, h_scale per-class cap
    std::uint64_t num_extra_classes = 0;  // h_scale
    std::uint64_t tail_k = 0;             // rebalance_tail

    static TransformSpec from_json(const std::string& text);
    std::string to_json() const;

    // donors: required (exactly one) for h_scale and rebalance_tail,
    // optional extra sources for blend, rejected elsewhere.
    Manifest apply(const Manifest& input, const std::vector<Manifest>& donors,
                   TransformSummary* summary = nullptr) const;

    bool needs_donor() const {
        return kind == TransformKind::h_scale || kind == TransformKind::rebalance_tail;
    }
};

std::string_view transform_kind_name(TransformKind k);

}  // namespace dqa
