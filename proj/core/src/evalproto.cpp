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

#include "dqa/evalproto.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

namespace dqa {
namespace {

std::vector<std::string> split_commas(const std::string& line) {
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

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<std::string> mask_and_argmax(const ScoreMatrix& scores,
                                         const std::set<std::string>& allowed) {
    if (allowed.empty()) throw DataError("allowed class set is empty");

    std::vector<std::size_t> allowed_cols;
    {
        std::unordered_set<std::string_view> columns(scores.classes.begin(),
                                                     scores.classes.end());
        for (const auto& cls : allowed)
            if (!columns.contains(cls))
                throw DataError("allowed class \"" + cls + "\" is not a score column");
    }
    for (std::size_t c = 0; c < scores.classes.size(); ++c)
        if (allowed.contains(scores.classes[c])) allowed_cols.push_back(c);

    std::vector<std::string> predictions;
    predictions.reserve(scores.rows());
    for (std::size_t row = 0; row < scores.rows(); ++row) {
        std::size_t best = allowed_cols.front();
        for (std::size_t c : allowed_cols) {
            double v = scores.at(row, c);
            double b = scores.at(row, best);
            if (v > b || (v == b && scores.classes[c] < scores.classes[best])) best = c;
        }
        predictions.push_back(scores.classes[best]);
    }
    return predictions;
}

double top1_accuracy(const std::vector<std::string>& predicted,
                     const std::vector<std::string>& truth) {
    if (predicted.size() != truth.size())
        throw DataError("prediction and truth lists differ in length");
    if (predicted.empty()) throw DataError("top1_accuracy needs at least one sample");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++matches;
    return 100.0 * static_cast<double>(matches) / static_cast<double>(predicted.size());
}

double average_robustness(const std::vector<double>& shift_accuracies) {
    if (shift_accuracies.empty())
        throw DataError("average robustness needs at least one shift accuracy");
    double sum = 0.0;
    for (double a : shift_accuracies) sum += a;
    return sum / static_cast<double>(shift_accuracies.size());
}

ScoreMatrix read_scores_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open scores file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("scores file is empty: " + path.string());
    strip_cr(line);

    ScoreMatrix m;
    m.classes = split_commas(line);
    std::unordered_set<std::string> seen;
    for (const auto& cls : m.classes) {
        if (cls.empty()) throw DataError("scores header has an empty class identifier");
        if (!seen.insert(cls).second)
            throw DataError("scores header repeats class \"" + cls + "\"");
    }

    std::uint64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_commas(line);
        if (fields.size() != m.classes.size())
            throw DataError("scores row at line " + std::to_string(lineno) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(m.classes.size()));
        for (const auto& f : fields) {
            double v = 0.0;
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc{} || p != f.data() + f.size())
                throw DataError("bad score \"" + f + "\" at line " + std::to_string(lineno));
            m.values.push_back(v);
        }
    }
    return m;
}

std::vector<std::string> read_truth_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open truth file: " + path.string());
    std::vector<std::string> truth;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        if (!line.empty()) truth.push_back(line);
    }
    return truth;
}

}  // namespace dqa
