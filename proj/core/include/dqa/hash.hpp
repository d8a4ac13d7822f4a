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
#include <string_view>

namespace dqa {

// Finalizer from MurmurHash3; full avalanche on 64 bits.
inline constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Keyed 64-bit hash: FNV-1a body seeded by `seed`, mixed output.
// Deterministic across platforms and runs; never uses std::hash.
inline std::uint64_t hash_bytes(std::string_view data, std::uint64_t seed) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ mix64(seed);
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

// Sampling rank for a record within a class. Selecting the n records with
// the smallest ranks yields a deterministic, order-independent subset.
inline std::uint64_t sample_rank(std::uint64_t seed, std::string_view class_id,
                                 std::string_view record_id) noexcept {
    return hash_bytes(record_id, hash_bytes(class_id, seed));
}

}  // namespace dqa
