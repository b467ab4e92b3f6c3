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

#include "cfimage/presets.hpp"

#include "cfimage/errors.hpp"

namespace cfimage::presets
{
    FrequencyGrid study_frequencies()
    {
        return FrequencyGrid::inclusive(kStartFrequency, kStopFrequency, kFrequencySteps);
    }

    ArrayGeometry simo_arc_geometry()
    {
        const auto tx = arc_receiver_array(kArcRadius, 0.0, 1, kBroadsideDeg);
        return ArrayGeometry(tx, arc_receiver_array(kArcRadius, kApertureDeg, kReceiverCount, kBroadsideDeg));
    }

    ArrayGeometry turntable_arc_geometry()
    {
        return turntable_geometry(kArcRadius, kApertureDeg, kReceiverCount, kBroadsideDeg);
    }

    ImageRegion centred_region(Position2D centre, double half_width, std::size_t n)
    {
        if (n == 0 || !(half_width > 0.0))
            throw InputError("centred region needs a positive size");
        const double pixel = 2.0 * half_width / static_cast<double>(n);
        const double offset = (static_cast<double>(n / 2) + 0.5) * pixel;
        const double x0 = centre.x - offset;
        const double y0 = centre.y - offset;
        return ImageRegion(x0, x0 + 2.0 * half_width, y0, y0 + 2.0 * half_width, n, n);
    }

    SceneConfig point_target_scene(const ArrayGeometry &geometry, std::size_t n, double half_width)
    {
        const ImageRegion region = centred_region({0.0, 0.0}, half_width, n);
        return SceneConfig{
            .scatterers = {Scatterer{region.center(n / 2, n / 2), {1.0, 0.0}}},
            .multipath = {},
            .geometry = geometry,
            .frequencies = study_frequencies(),
            .region = region,
        };
    }

    SceneConfig ghost_scene(std::size_t n, double coupling)
    {
        const ImageRegion region = centred_region({0.0, 0.0}, 1.5, n);
        auto snap = [&](Position2D p)
        { return region.center(region.index_of(p)); };
        return SceneConfig{
            .scatterers = {Scatterer{snap({-0.8, 0.0}), {1.0, 0.0}},
                           Scatterer{snap({0.8, 0.0}), {1.0, 0.0}},
                           Scatterer{snap({0.0, 0.8}), {1.0, 0.0}}},
            .multipath = {MultipathPair{0, 1, {coupling, 0.0}}},
            .geometry = simo_arc_geometry(),
            .frequencies = study_frequencies(),
            .region = region,
        };
    }
}
