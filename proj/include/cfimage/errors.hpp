// SPDX-License-Identifier: Apache-2.0
//
// cfimage - step-frequency array imaging with coherence-factor filtering
// Copyright (C) 2026 The cfimage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfimage
{
    // Bad user input: invalid arguments, malformed files, mismatched shapes.
    // The CLI maps this to exit status 1.
    class InputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Scene configuration error, optionally tied to a line of the source file.
    class ConfigError : public InputError
    {
    public:
        ConfigError(const std::string &what, std::size_t line = 0)
            : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

        std::size_t line() const noexcept { return line_; }

        // Same error with the source file name prefixed to the message.
        ConfigError in_file(const std::string &file) const { return ConfigError(file + ": " + what(), line_, 0); }

    private:
        ConfigError(const std::string &full_message, std::size_t line, int)
            : InputError(full_message), line_(line) {}

        std::size_t line_;
    };

    // A computed quantity violated a mathematical invariant beyond rounding slack.
    // Indicates a bug, never bad input. The CLI maps this to exit status 2.
    class ConsistencyError : public std::logic_error
    {
    public:
        using std::logic_error::logic_error;
    };
}
