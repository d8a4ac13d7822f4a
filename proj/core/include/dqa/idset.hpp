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
#include <mutex>
#include <vector>

#include "dqa/hash.hpp"

namespace dqa {

// Compact duplicate-id tracker for streaming manifest scans.
//
// Stores one 64-bit slot per id: 48 bits of the id hash plus a 16-bit
// content fingerprint, in 64 independently growing open-addressed shards.
// Memory is ~8 bytes per distinct id regardless of id length, and the
// per-shard growth keeps the rehash transient small at 10^8-id scale.
//
// Two distinct ids that collide on the 48-bit key are reported as
// duplicates (false-drop probability ~ n^2 / 2^55; about 3e-3 at n = 10^7).
// A true duplicate id whose content changed escapes conflict detection
// with probability 2^-16 per event.
class IdDedupSet {
public:
    enum class Insert { inserted, duplicate, conflict };

    IdDedupSet() = default;
    IdDedupSet(const IdDedupSet&) = delete;
    IdDedupSet& operator=(const IdDedupSet&) = delete;

    // Thread-safe. id_hash should be a well-mixed 64-bit hash of the id;
    // content_hash a hash of the whole record.
    Insert insert(std::uint64_t id_hash, std::uint64_t content_hash) {
        Shard& shard = shards_[id_hash >> 58];
        std::uint64_t key = slot_value(id_hash, content_hash);
        std::lock_guard<std::mutex> lock(shard.mu);
        if (shard.slots.empty()) shard.slots.resize(kInitialCapacity, 0);
        if ((shard.size + 1) * 10 > shard.slots.size() * 7) grow(shard);
        return probe_insert(shard, key);
    }

    std::uint64_t size() const {
        std::uint64_t total = 0;
        for (const Shard& s : shards_) {
            std::lock_guard<std::mutex> lock(s.mu);
            total += s.size;
        }
        return total;
    }

private:
    static constexpr std::size_t kInitialCapacity = 1024;
    static constexpr std::uint64_t kKeyMask = ~std::uint64_t{0} << 16;

    struct Shard {
        std::vector<std::uint64_t> slots;
        std::size_t size = 0;
        mutable std::mutex mu;
    };

    static std::uint64_t slot_value(std::uint64_t id_hash, std::uint64_t content_hash) {
        std::uint64_t v = ((id_hash >> 10) << 16) | (content_hash & 0xffff);
        return v == 0 ? 1 : v;  // 0 is the empty-slot sentinel
    }

    static Insert probe_insert(Shard& shard, std::uint64_t key) {
        std::size_t mask = shard.slots.size() - 1;
        std::size_t pos = static_cast<std::size_t>(mix64(key >> 16)) & mask;
        for (;;) {
            std::uint64_t cur = shard.slots[pos];
            if (cur == 0) {
                shard.slots[pos] = key;
                ++shard.size;
                return Insert::inserted;
            }
            if ((cur & kKeyMask) == (key & kKeyMask))
                return cur == key ? Insert::duplicate : Insert::conflict;
            pos = (pos + 1) & mask;
        }
    }

    static void grow(Shard& shard) {
        std::vector<std::uint64_t> old;
        old.swap(shard.slots);
        shard.slots.resize(old.size() * 2, 0);
        shard.size = 0;
        for (std::uint64_t v : old)
            if (v != 0) probe_insert(shard, v);
    }

    Shard shards_[64];
};

}  // namespace dqa
