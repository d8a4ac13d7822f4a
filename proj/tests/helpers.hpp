#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "dqa/manifest.hpp"

namespace testutil {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("dqa_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// Random manifest with up to max_classes classes and up to max_per_class
// samples each; ids are unique across the manifest.
inline dqa::Manifest random_manifest(std::mt19937_64& rng, int max_classes = 12,
                                     int max_per_class = 30) {
    dqa::Manifest m;
    int classes = 1 + static_cast<int>(rng() % max_classes);
    for (int c = 0; c < classes; ++c) {
        std::string cls = "class" + std::to_string(c);
        int n = static_cast<int>(rng() % (max_per_class + 1));
        for (int i = 0; i < n; ++i) {
            dqa::SampleRecord r;
            r.id = cls + "-s" + std::to_string(i) + "-" + std::to_string(rng() % 100000);
            while (true) {  // ids must be unique; regenerate on the rare clash
                bool clash = false;
                for (const auto& existing : m.records)
                    if (existing.id == r.id) clash = true;
                if (!clash) break;
                r.id += "x";
            }
            r.labels = {cls};
            if (rng() % 2) r.source = "src" + std::to_string(rng() % 3);
            m.records.push_back(std::move(r));
        }
    }
    return m;
}

inline void shuffle_records(dqa::Manifest& m, std::mt19937_64& rng) {
    std::shuffle(m.records.begin(), m.records.end(), rng);
}

}  // namespace testutil
