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
#include <stdexcept>
#include <string>

namespace dqa {

// Anything wrong with input data or files. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed manifest content, with position information.
class ParseError : public DataError {
public:
    ParseError(const std::string& what, std::uint64_t line, std::uint64_t byte_offset)
        : DataError(what + " (line " + std::to_string(line) + ", byte offset " +
                    std::to_string(byte_offset) + ")"),
          line_(line),
          byte_offset_(byte_offset) {}

    std::uint64_t line() const noexcept { return line_; }
    std::uint64_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::uint64_t line_;
    std::uint64_t byte_offset_;
};

}  // namespace dqa
