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

#include "dqa/manifest.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dqa/hash.hpp"
#include "dqa/idset.hpp"

namespace dqa {
namespace {

using nlohmann::json;

constexpr std::uint64_t kIdHashSeed = 0x6471612d69647331ULL;

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

void validate_record(const SampleRecord& r, std::uint64_t line, std::uint64_t offset) {
    if (r.id.empty()) throw ParseError("record id is empty", line, offset);
    if (r.id.find('\n') != std::string::npos)
        throw ParseError("record id contains a newline", line, offset);
    if (r.labels.empty()) throw ParseError("record has no labels", line, offset);
    for (const auto& l : r.labels)
        if (l.empty()) throw ParseError("record has an empty label", line, offset);
}

SampleRecord parse_jsonl_line(const std::string& line, std::uint64_t lineno,
                              std::uint64_t offset) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), lineno, offset);
    }
    if (!j.is_object()) throw ParseError("JSONL line is not an object", lineno, offset);

    SampleRecord r;
    auto id_it = j.find("id");
    if (id_it == j.end() || !id_it->is_string())
        throw ParseError("missing or non-string \"id\"", lineno, offset);
    r.id = id_it->get<std::string>();

    auto labels_it = j.find("labels");
    if (labels_it == j.end() || !labels_it->is_array())
        throw ParseError("missing or non-array \"labels\"", lineno, offset);
    for (const auto& l : *labels_it) {
        if (!l.is_string())
            throw ParseError("non-string entry in \"labels\"", lineno, offset);
        r.labels.push_back(l.get<std::string>());
    }

    auto src_it = j.find("source");
    if (src_it != j.end() && !src_it->is_null()) {
        if (!src_it->is_string())
            throw ParseError("non-string \"source\"", lineno, offset);
        r.source = src_it->get<std::string>();
    }
    validate_record(r, lineno, offset);
    return r;
}

SampleRecord parse_dirlist_line(const std::string& line, std::uint64_t lineno,
                                std::uint64_t offset) {
    // class = penultimate path component, id = the whole path
    auto last = line.rfind('/');
    if (last == std::string::npos || last == 0)
        throw ParseError("dirlist path has no class directory: \"" + line + "\"", lineno,
                         offset);
    auto prev = line.rfind('/', last - 1);
    std::string cls = (prev == std::string::npos) ? line.substr(0, last)
                                                  : line.substr(prev + 1, last - prev - 1);
    if (cls.empty())
        throw ParseError("dirlist path has an empty class component", lineno, offset);
    SampleRecord r;
    r.id = line;
    r.labels.push_back(std::move(cls));
    validate_record(r, lineno, offset);
    return r;
}

// Splits a csv row on commas. The dialect does not quote, so this is exact.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

// Tracks dropped duplicates and raises on conflicting ones.
class Deduper {
public:
    // Returns false when the record is an exact duplicate and must be dropped.
    bool admit(const SampleRecord& r, std::uint64_t lineno, std::uint64_t offset) {
        switch (set_.insert(record_id_hash(r.id), record_content_hash(r))) {
            case IdDedupSet::Insert::inserted:
                return true;
            case IdDedupSet::Insert::duplicate:
                dropped_.fetch_add(1, std::memory_order_relaxed);
                return false;
            case IdDedupSet::Insert::conflict:
                throw ParseError("duplicate id \"" + r.id + "\" with conflicting content",
                                 lineno, offset);
        }
        return false;  // unreachable
    }

    std::uint64_t dropped() const { return dropped_.load(std::memory_order_relaxed); }

private:
    IdDedupSet set_;
    std::atomic<std::uint64_t> dropped_{0};
};

// Streams one byte range of a file line by line. `end` may fall mid-line; the
// reader consumes the line that starts before `end` and stops.
template <typename Fn>
void for_lines_in_range(std::istream& in, std::uint64_t start, std::uint64_t end,
                        Fn&& fn) {
    in.seekg(static_cast<std::streamoff>(start));
    std::string line;
    std::uint64_t offset = start;
    std::uint64_t lineno = (start == 0) ? 0 : std::uint64_t(-1);  // unknown when seeking
    while (offset < end && std::getline(in, line)) {
        std::uint64_t next = offset + line.size() + 1;
        ++lineno;
        strip_cr(line);
        if (!line.empty()) fn(line, lineno, offset);
        offset = next;
    }
}

// csv rows with the same id on consecutive lines merge into one multi-label
// record; the merged record is deduplicated as a unit once flushed.
class CsvAccumulator {
public:
    CsvAccumulator(Deduper& dedup, ScanStats& stats, const RecordSink& sink)
        : dedup_(dedup), stats_(stats), sink_(sink) {}

    void row(const std::string& line, std::uint64_t lineno, std::uint64_t offset) {
        auto fields = split_csv(line);
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError("csv row must have 2 or 3 fields, got " +
                                 std::to_string(fields.size()),
                             lineno, offset);
        std::optional<std::string> source;
        if (fields.size() == 3 && !fields[2].empty()) source = fields[2];

        if (pending_ && pending_->id == fields[0]) {
            if (pending_->source != source)
                throw ParseError("csv rows for id \"" + fields[0] +
                                     "\" disagree on source",
                                 lineno, offset);
            if (std::find(pending_->labels.begin(), pending_->labels.end(), fields[1]) ==
                pending_->labels.end())
                pending_->labels.push_back(fields[1]);
            return;
        }
        flush();
        pending_ = SampleRecord{fields[0], {fields[1]}, std::move(source)};
        pending_line_ = lineno;
        pending_offset_ = offset;
    }

    void flush() {
        if (!pending_) return;
        validate_record(*pending_, pending_line_, pending_offset_);
        if (dedup_.admit(*pending_, pending_line_, pending_offset_)) {
            ++stats_.records;
            sink_(std::move(*pending_));
        }
        pending_.reset();
    }

private:
    Deduper& dedup_;
    ScanStats& stats_;
    const RecordSink& sink_;
    std::optional<SampleRecord> pending_;
    std::uint64_t pending_line_ = 0;
    std::uint64_t pending_offset_ = 0;
};

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path.string());
    return in;
}

ScanStats scan_csv(std::istream& in, const RecordSink& sink) {
    std::string header;
    if (!std::getline(in, header)) return {};  // empty file -> empty manifest
    strip_cr(header);
    if (header != "id,label,source" && header != "id,label")
        throw ParseError("csv header must be \"id,label,source\", got \"" + header + "\"",
                         1, 0);

    ScanStats stats;
    Deduper dedup;
    CsvAccumulator acc(dedup, stats, sink);
    std::string line;
    std::uint64_t offset = header.size() + 1;
    std::uint64_t lineno = 1;
    while (std::getline(in, line)) {
        std::uint64_t next = offset + line.size() + 1;
        ++lineno;
        strip_cr(line);
        if (!line.empty()) acc.row(line, lineno, offset);
        offset = next;
    }
    acc.flush();
    stats.duplicates_dropped = dedup.dropped();
    return stats;
}

}  // namespace

std::optional<ManifestFormat> format_from_name(std::string_view name) {
    if (name == "jsonl") return ManifestFormat::jsonl;
    if (name == "csv") return ManifestFormat::csv;
    if (name == "dirlist") return ManifestFormat::dirlist;
    return std::nullopt;
}

std::string_view format_name(ManifestFormat f) {
    switch (f) {
        case ManifestFormat::jsonl: return "jsonl";
        case ManifestFormat::csv: return "csv";
        case ManifestFormat::dirlist: return "dirlist";
    }
    return "?";
}

std::uint64_t record_id_hash(std::string_view id) { return hash_bytes(id, kIdHashSeed); }

std::uint64_t record_content_hash(const SampleRecord& r) {
    return hash_bytes(record_to_jsonl(r), kIdHashSeed + 1);
}

ScanStats scan_manifest(const std::filesystem::path& path, ManifestFormat format,
                        const RecordSink& sink) {
    auto in = open_input(path);
    if (format == ManifestFormat::csv) return scan_csv(in, sink);

    ScanStats stats;
    Deduper dedup;
    auto parse = (format == ManifestFormat::jsonl) ? parse_jsonl_line : parse_dirlist_line;
    for_lines_in_range(in, 0, std::uint64_t(-1),
                       [&](const std::string& line, std::uint64_t lineno,
                           std::uint64_t offset) {
                           SampleRecord r = parse(line, lineno, offset);
                           if (dedup.admit(r, lineno, offset)) {
                               ++stats.records;
                               sink(std::move(r));
                           }
                       });
    stats.duplicates_dropped = dedup.dropped();
    return stats;
}

ScanStats scan_manifest_parallel(
    const std::filesystem::path& path, ManifestFormat format, unsigned threads,
    const std::function<void(unsigned worker, SampleRecord&&)>& sink) {
    if (format == ManifestFormat::csv || threads <= 1) {
        return scan_manifest(path, format,
                             [&](SampleRecord&& r) { sink(0, std::move(r)); });
    }

    std::uint64_t file_size = std::filesystem::file_size(path);
    if (file_size == 0) return {};
    threads = std::max(1u, std::min<unsigned>(threads, 64));

    // chunk boundaries aligned to the next newline
    std::vector<std::uint64_t> bounds{0};
    {
        auto probe = open_input(path);
        for (unsigned i = 1; i < threads; ++i) {
            std::uint64_t target = file_size * i / threads;
            if (target <= bounds.back()) continue;
            probe.clear();
            probe.seekg(static_cast<std::streamoff>(target));
            std::string skip;
            std::getline(probe, skip);
            std::uint64_t aligned = target + skip.size() + 1;
            if (aligned < file_size) bounds.push_back(aligned);
        }
        bounds.push_back(file_size);
    }

    auto parse = (format == ManifestFormat::jsonl) ? parse_jsonl_line : parse_dirlist_line;
    Deduper dedup;
    std::atomic<std::uint64_t> records{0};
    std::mutex error_mu;
    std::exception_ptr error;

    auto work = [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        try {
            auto in = open_input(path);
            for_lines_in_range(in, begin, end,
                               [&](const std::string& line, std::uint64_t,
                                   std::uint64_t offset) {
                                   SampleRecord r = parse(line, 0, offset);
                                   if (dedup.admit(r, 0, offset)) {
                                       records.fetch_add(1, std::memory_order_relaxed);
                                       sink(worker, std::move(r));
                                   }
                               });
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
        pool.emplace_back(work, static_cast<unsigned>(i), bounds[i], bounds[i + 1]);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    return {records.load(), dedup.dropped()};
}

Manifest parse_manifest(const std::filesystem::path& path, ManifestFormat format) {
    Manifest m;
    ScanStats stats = scan_manifest(
        path, format, [&](SampleRecord&& r) { m.records.push_back(std::move(r)); });
    m.duplicates_dropped = stats.duplicates_dropped;
    return m;
}

std::string record_to_jsonl(const SampleRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["labels"] = r.labels;
    if (r.source) j["source"] = *r.source;
    return j.dump();
}

namespace {

std::vector<const SampleRecord*> canonical_order(const Manifest& m) {
    std::vector<const SampleRecord*> order;
    order.reserve(m.records.size());
    for (const auto& r : m.records) order.push_back(&r);
    std::sort(order.begin(), order.end(), [](const SampleRecord* a, const SampleRecord* b) {
        if (a->primary_label() != b->primary_label())
            return a->primary_label() < b->primary_label();
        return a->id < b->id;
    });
    return order;
}

}  // namespace

void emit_manifest(const Manifest& m, std::ostream& out) {
    for (const SampleRecord* r : canonical_order(m)) out << record_to_jsonl(*r) << '\n';
}

void emit_manifest(const Manifest& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open output manifest: " + path.string());
    emit_manifest(m, out);
    out.flush();
    if (!out) throw DataError("write failed: " + path.string());
}

std::string manifest_to_string(const Manifest& m) {
    std::ostringstream out;
    emit_manifest(m, out);
    return out.str();
}

bool manifests_equal(const Manifest& a, const Manifest& b) {
    if (a.declared_labels != b.declared_labels) return false;
    if (a.records.size() != b.records.size()) return false;
    auto oa = canonical_order(a);
    auto ob = canonical_order(b);
    for (std::size_t i = 0; i < oa.size(); ++i)
        if (!(*oa[i] == *ob[i])) return false;
    return true;
}

void check_declared_labels(const Manifest& m) {
    if (!m.declared_labels) return;
    const auto& d = *m.declared_labels;
    for (const auto& r : m.records)
        for (const auto& l : r.labels)
            if (!std::binary_search(d.begin(), d.end(), l))
                throw DataError("label \"" + l + "\" of record \"" + r.id +
                                "\" is not in the declared label set");
}

std::vector<std::string> read_label_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (!line.empty()) labels.push_back(line);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace dqa
