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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dqa/errors.hpp"

namespace dqa {

// One labeled sample reference. The sample content itself (pixels, captions)
// is never touched; manifests are pure listings.
struct SampleRecord {
    std::string id;                      // unique within a manifest, no newlines
    std::vector<std::string> labels;     // >= 1 entry, each non-empty; order preserved
    std::optional<std::string> source;   // e.g. dataset of origin

    // The label that contributes to histograms and transforms in
    // primary-label mode.
    const std::string& primary_label() const { return labels.front(); }

    bool operator==(const SampleRecord&) const = default;
};

struct Manifest {
    std::vector<SampleRecord> records;
    // Explicit class vocabulary, sorted and unique. May name classes with
    // zero samples. When absent the vocabulary is whatever the records use.
    std::optional<std::vector<std::string>> declared_labels;
    std::uint64_t duplicates_dropped = 0;
};

enum class ManifestFormat { jsonl, csv, dirlist };

std::optional<ManifestFormat> format_from_name(std::string_view name);
std::string_view format_name(ManifestFormat f);

struct ScanStats {
    std::uint64_t records = 0;             // records delivered to the sink
    std::uint64_t duplicates_dropped = 0;  // exact duplicates silently dropped
};

using RecordSink = std::function<void(SampleRecord&&)>;

// Streams records out of a manifest file in file order, deduplicating ids as
// it goes. Peak memory is O(classes + distinct ids x 8 bytes), independent of
// record sizes. Exact duplicate records are dropped and counted; a repeated
// id with different content throws ParseError.
ScanStats scan_manifest(const std::filesystem::path& path, ManifestFormat format,
                        const RecordSink& sink);

// Range-parallel variant for jsonl and dirlist: the file is split at line
// boundaries into `threads` chunks scanned concurrently. The sink receives
// the worker index and must tolerate concurrent calls with distinct worker
// ids. csv falls back to a sequential scan on worker 0. Error positions are
// reported as byte offsets only (line numbers are not tracked across chunks).
ScanStats scan_manifest_parallel(
    const std::filesystem::path& path, ManifestFormat format, unsigned threads,
    const std::function<void(unsigned worker, SampleRecord&&)>& sink);

// Materializes the whole file. Convenience for transforms; audits should
// stream via scan_manifest instead.
Manifest parse_manifest(const std::filesystem::path& path, ManifestFormat format);

// Canonical JSONL: one record per line, keys in order (id, labels, source),
// LF endings, records sorted by (first label, id). Reparsing yields an equal
// manifest.
void emit_manifest(const Manifest& m, std::ostream& out);
void emit_manifest(const Manifest& m, const std::filesystem::path& path);
std::string manifest_to_string(const Manifest& m);

// One canonical JSONL line, no trailing newline.
std::string record_to_jsonl(const SampleRecord& r);

// Equality up to canonical record ordering.
bool manifests_equal(const Manifest& a, const Manifest& b);

// Hash of the full record content, used for duplicate-vs-conflict decisions.
std::uint64_t record_content_hash(const SampleRecord& r);
std::uint64_t record_id_hash(std::string_view id);

// Throws DataError if some record label is missing from declared_labels.
void check_declared_labels(const Manifest& m);

// Reads a newline-separated class list (for --labels and eval --allow files).
std::vector<std::string> read_label_file(const std::filesystem::path& path);

}  // namespace dqa
