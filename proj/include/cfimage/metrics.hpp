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

#include <limits>
#include <string>
#include <vector>

namespace cfimage
{
    // Array broadside is +y: range runs along y (an image column), azimuth along x (an image row).
    enum class CutAxis
    {
        range,
        azimuth
    };

    struct ImageCut
    {
        CutAxis axis = CutAxis::range;
        std::vector<double> coordinates; // m, pixel centres along the cut
        std::vector<double> values_db;   // 20 log10(|g| / max |g| on the cut)
    };

    inline constexpr double kNoSidelobe = -std::numeric_limits<double>::infinity();

    // 20 log10(magnitude / reference); -inf for zero magnitude.
    double magnitude_db(double magnitude, double reference);

    // Column (range) or row (azimuth) of pixels nearest `through`, normalised to its own peak.
    ImageCut extract_cut(const ImageGrid &image, Position2D through, CutAxis axis);

    // Highest sample outside the mainlobe, in dB relative to the cut peak.
    // The mainlobe extends from the global peak (first occurrence) to the first local
    // minimum on each side. Returns kNoSidelobe when nothing lies outside it.
    double peak_sidelobe_ratio(const ImageCut &cut);

    struct GhostPeak
    {
        Position2D position;
        std::size_t index = 0; // row-major pixel index
        double level_db = 0.0; // relative to the global image peak
    };

    inline constexpr double kDefaultGhostFloorDb = -40.0;

    // Three range-resolution cells, 3 c / (2 B).
    double default_exclusion_radius(const FrequencyGrid &frequencies, double wave_speed);

    // Local maxima (8-neighbourhood) outside discs of `exclusion_radius` around each true target,
    // at or above `floor_db` relative to the global peak. Sorted by level, descending; equal
    // levels keep ascending pixel index. Among equal neighbouring maxima the lowest index wins.
    std::vector<GhostPeak> ghost_level(const ImageGrid &image, const std::vector<Position2D> &true_targets,
                                       double exclusion_radius, double floor_db = kDefaultGhostFloorDb);

    // Peak-normalised level of `after` at `at` minus that of `before`, in dB.
    // Negative values mean `after` suppresses the pixel more.
    double suppression_delta(const ImageGrid &before, const ImageGrid &after, Position2D at);

    struct QualityReport
    {
        double mainlobe_peak = 0.0;
        Position2D peak_position;
        double pslr_range = kNoSidelobe;
        double pslr_azimuth = kNoSidelobe;
        std::vector<GhostPeak> ghost_levels;
        std::vector<std::string> notes;
    };

    // PSLR of both cuts through the global image peak plus the ghost search.
    QualityReport quality_report(const ImageGrid &image, const std::vector<Position2D> &true_targets,
                                 double exclusion_radius, double floor_db = kDefaultGhostFloorDb);

    // Human-readable block followed by `key=value` records prefixed with `label.`.
    // Only the ten strongest ghosts are listed; the count covers all of them.
    std::string format_report(const std::string &label, const QualityReport &report);
}
