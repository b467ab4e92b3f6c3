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

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>

#include "cfimage/geometry.hpp"

namespace cfimage
{
    // exp(j * 2 * pi * turns), with the integer part of `turns` removed before the
    // trigonometric evaluation so large delays keep full phase precision.
    inline std::complex<double> unit_phasor(double turns) noexcept
    {
        const double frac = turns - std::nearbyint(turns);
        const double phase = 2.0 * std::numbers::pi * frac;
        return {std::cos(phase), std::sin(phase)};
    }

    // exp(j * 2 * pi * turns) for a phase argument carried in extended precision.
    inline std::complex<double> unit_phasor_extended(long double turns) noexcept
    {
        const double frac = static_cast<double>(turns - std::nearbyint(turns));
        const double phase = 2.0 * std::numbers::pi * frac;
        return {std::cos(phase), std::sin(phase)};
    }

    // Straight-line and transmitter -> target -> receiver path lengths in extended precision.
    inline long double extended_distance(Position2D a, Position2D b) noexcept
    {
        const long double dx = static_cast<long double>(a.x) - b.x;
        const long double dy = static_cast<long double>(a.y) - b.y;
        return std::sqrt(dx * dx + dy * dy);
    }

    inline long double extended_two_way_distance(Position2D target, Position2D tx, Position2D rx) noexcept
    {
        return extended_distance(target, tx) + extended_distance(target, rx);
    }

    // Turns accumulated at ladder frequency start + i * step over `path_length`.
    inline long double ladder_turns(double start, double step, std::size_t i, long double path_length,
                                    double wave_speed) noexcept
    {
        const long double f = static_cast<long double>(start) + static_cast<long double>(i) * step;
        return f * path_length / wave_speed;
    }

    // Steps between direct evaluations in fill_phasor_ladder; bounds recurrence drift to ~16 ulp.
    inline constexpr std::size_t kLadderAnchorInterval = 16;

    // out[i] = exp(+j 2 pi (start + i step) path / c) for the step-frequency ladder, by complex
    // recurrence re-anchored on a direct evaluation every kLadderAnchorInterval steps.
    inline void fill_phasor_ladder(double start, double step, long double path_length, double wave_speed,
                                   std::span<std::complex<double>> out) noexcept
    {
        const std::complex<double> rotation = unit_phasor_extended(step * path_length / wave_speed);
        for (std::size_t i = 0; i < out.size(); ++i)
        {
            if (i % kLadderAnchorInterval == 0)
                out[i] = unit_phasor_extended(ladder_turns(start, step, i, path_length, wave_speed));
            else
                out[i] = out[i - 1] * rotation;
        }
    }
}
