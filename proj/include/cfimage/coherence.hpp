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

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cfimage
{
    enum class MapKind
    {
        cf,    // coherence factor across channels
        cff,   // coherence factor across frequencies
        cf2d,  // cf * cff
        pcf,   // phase coherence factor across channels
        pcff,  // phase coherence factor across frequencies
        pcf2d, // pcf * pcff
    };

    inline constexpr std::array<MapKind, 6> kAllMapKinds{MapKind::cf, MapKind::cff, MapKind::cf2d,
                                                         MapKind::pcf, MapKind::pcff, MapKind::pcf2d};

    std::string_view to_string(MapKind kind) noexcept;
    std::optional<MapKind> parse_map_kind(std::string_view name) noexcept;

    // Real-valued per-pixel weights in [0, 1].
    class CoherenceMap
    {
    public:
        // Throws InputError on a size mismatch or a value outside [0, 1].
        CoherenceMap(const ImageRegion &region, MapKind kind, std::vector<double> values);

        const ImageRegion &region() const noexcept { return region_; }
        MapKind kind() const noexcept { return kind_; }
        std::size_t size() const noexcept { return values_.size(); }
        double operator[](std::size_t index) const { return values_[index]; }
        double at(std::size_t k, std::size_t l) const { return values_[region_.index(k, l)]; }
        const std::vector<double> &values() const noexcept { return values_; }

    private:
        ImageRegion region_;
        MapKind kind_;
        std::vector<double> values_;
    };

    // Unclamped per-pixel factors of one set of aggregated terms.
    //   coherence_factor:       |sum y|^2 / (K sum |y|^2), 0 when all terms vanish
    //   phase_coherence_factor: 1 - sqrt(var cos(phi) + var sin(phi)), population variance,
    //                           phi = arg y with arg 0 := 0
    double coherence_factor(std::span<const Complex> terms);
    double phase_coherence_factor(std::span<const Complex> terms);

    // Values within 1e-12 outside [0, 1] are clamped; anything further raises ConsistencyError.
    inline constexpr double kMapSlack = 1e-12;
    double clamp_unit(double value);

    CoherenceMap cf_spatial(const ChannelImageStack &stack);
    CoherenceMap cf_frequency(const FrequencyImageStack &stack);
    CoherenceMap cf_2d(const CoherenceMap &spatial, const CoherenceMap &frequency);

    CoherenceMap pcf_spatial(const ChannelImageStack &stack);
    CoherenceMap pcf_frequency(const FrequencyImageStack &stack);
    CoherenceMap pcf_2d(const CoherenceMap &spatial, const CoherenceMap &frequency);

    ImageGrid apply_map(const ImageGrid &image, const CoherenceMap &map);

    // All six maps from the two stacks.
    struct CoherenceMaps
    {
        CoherenceMap cf, cff, cf2d, pcf, pcff, pcf2d;

        const CoherenceMap &get(MapKind kind) const;
    };

    CoherenceMaps compute_all_maps(const ChannelImageStack &channels, const FrequencyImageStack &frequencies);
}
