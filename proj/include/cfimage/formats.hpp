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

#include "cfimage/backprojection.hpp"
#include "cfimage/coherence.hpp"
#include "cfimage/forward.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cfimage
{
    // Shortest decimal text that parses back to the identical double.
    std::string format_exact(double value);
    double parse_exact(std::string_view text);

    // .echo: "RCE1\n", `key = value` header lines (mode, counts, f0, delta_f, wave_speed, then one
    // `tx = x y` / `rx = x y` line per element), a blank line, then little-endian float64 (re, im)
    // pairs in channel-major, frequency-minor order.
    void write_echo(std::ostream &os, const EchoData &echo);
    EchoData read_echo(std::istream &is);
    void save_echo(const std::filesystem::path &path, const EchoData &echo);
    EchoData load_echo(const std::filesystem::path &path);

    // .img: "RCI1\n", header (payload = complex | real, kind, region bounds and pixel counts),
    // a blank line, then row-major little-endian float64 values ((re, im) pairs when complex).
    struct ImageFile
    {
        ImageRegion region;
        bool complex_payload = true;
        std::optional<MapKind> kind; // set for coherence maps
        std::vector<double> payload;
    };

    void write_image_file(std::ostream &os, const ImageFile &file);
    ImageFile read_image_file(std::istream &is);

    void save_image(const std::filesystem::path &path, const ImageGrid &image);
    ImageGrid load_image(const std::filesystem::path &path);
    void save_map(const std::filesystem::path &path, const CoherenceMap &map);
    CoherenceMap load_map(const std::filesystem::path &path);

    // 8-bit magnitude graymap, 255 at the image peak (0 dB) and 0 at floor_db, linear in dB,
    // rounded half away from zero. Rows run from y_max (top) to y_min.
    std::vector<std::uint8_t> db_graymap(const ImageGrid &image, double floor_db);

    // Binary portable graymap (P5) of db_graymap.
    void export_db_image(const ImageGrid &image, double floor_db, const std::filesystem::path &path);
}
