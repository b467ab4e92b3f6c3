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

#include "cfimage/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cfimage
{
    // Scene description grammar, SI units throughout:
    //
    //   # comment                      anywhere; also after a value
    //   wave_speed = 299792458         optional, before the first section
    //   spreading = off                optional, on | off
    //
    //   [array]                        exactly one
    //   tx = x, y                      repeatable, full channel set
    //   rx = x, y                      repeatable
    //   tx_arc = radius, aperture_deg, count[, centre_deg]
    //   rx_arc = radius, aperture_deg, count[, centre_deg]
    //   element = x, y                 repeatable, monostatic
    //   turntable = radius, span_deg, count[, centre_deg]   monostatic
    //
    //   [frequencies]                  exactly one
    //   start = 8e9
    //   step = 15.625e6  | stop = 9e9  (stop: endpoints inclusive)
    //   count = 64
    //
    //   [region]                       exactly one
    //   x_min = ..., x_max = ..., y_min = ..., y_max = ..., nx = ..., ny = ...  (one per line)
    //
    //   [scatterer]                    one or more, indexed from 0 in file order
    //   position = x, y
    //   reflectivity = re, im          optional, default 1, 0
    //
    //   [multipath]                    zero or more
    //   first = 0
    //   second = 1
    //   coupling = re, im
    //
    // Unknown keys and sections are errors. Errors carry the offending line number.
    struct ParsedScene
    {
        SceneConfig scene;
        std::vector<std::string> notes; // conventions applied while parsing
    };

    ParsedScene parse_scene_text(std::string_view text);
    ParsedScene parse_scene_config(const std::filesystem::path &path);
}
