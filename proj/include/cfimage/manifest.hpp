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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace cfimage
{
    inline constexpr const char *kToolVersion = "cfimage 1.0.0";

    // Lower-case hex SHA-256 of a file's bytes.
    std::string sha256_file(const std::filesystem::path &path);

    // Provenance record written next to every output. Contains no timestamps, so
    // identical runs produce identical manifests.
    struct RunManifest
    {
        std::string subcommand;
        std::vector<std::pair<std::string, std::string>> inputs; // path, sha256
        std::vector<std::string> outputs;
        std::vector<std::pair<std::string, std::string>> parameters;
        std::vector<std::string> notes;

        // Digests the input immediately, before any processing reads it.
        void add_input(const std::filesystem::path &path);
        void add_parameter(std::string key, std::string value);

        std::string to_text() const;
        void write(const std::filesystem::path &path) const;
    };
}
