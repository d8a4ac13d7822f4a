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

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "dqa/errors.hpp"

namespace dqa {

// Per-sample scores over an ordered training label set. Unit-free: logits or
// probabilities both work, since only per-row ordering matters downstream.
struct ScoreMatrix {
    std::vector<std::string> classes;  // column identifiers, unique
    std::vector<double> values;        // row-major, rows() x classes.size()

    std::size_t rows() const { return classes.empty() ? 0 : values.size() / classes.size(); }
    double at(std::size_t row, std::size_t col) const {
        return values[row * classes.size() + col];
    }
};

// Restricts each row's argmax to `allowed` — the zero-shot evaluation trick
// of knocking the out-of-distribution classes out of the label space. The
// excluded columns simply never compete (no literal zeroing, which would
// misbehave on negative logits). Ties go to the smallest class id.
std::vector<std::string> mask_and_argmax(const ScoreMatrix& scores,
                                         const std::set<std::string>& allowed);

double top1_accuracy(const std::vector<std::string>& predicted,
                     const std::vector<std::string>& truth);

// Arithmetic mean of per-shift accuracies.
double average_robustness(const std::vector<double>& shift_accuracies);

// csv with a header row of class identifiers, one row of scores per sample.
ScoreMatrix read_scores_csv(const std::filesystem::path& path);
// one class id per line, aligned with the score rows
std::vector<std::string> read_truth_file(const std::filesystem::path& path);

}  // namespace dqa
