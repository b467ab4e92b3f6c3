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

namespace cfimage::presets
{
    // Simulation parameters of the SIMO multipath study.
    inline constexpr double kArcRadius = 10.0;     // m
    inline constexpr double kStartFrequency = 8e9; // Hz
    inline constexpr double kStopFrequency = 9e9;  // Hz
    inline constexpr std::size_t kFrequencySteps = 64;
    inline constexpr double kApertureDeg = 8.0;
    inline constexpr std::size_t kReceiverCount = 81;
    inline constexpr double kBroadsideDeg = 90.0;

    // 8 - 9 GHz, 64 points, endpoints inclusive.
    FrequencyGrid study_frequencies();

    // One transmitter at the middle of an 81-element, 8 degree receiving arc of radius 10 m.
    ArrayGeometry simo_arc_geometry();

    // Turntable ISAR equivalent: 81 monostatic positions over the same 8 degree arc.
    ArrayGeometry turntable_arc_geometry();

    // Square region of side 2 * half_width whose pixel (n / 2, n / 2) is centred on `centre`.
    ImageRegion centred_region(Position2D centre, double half_width, std::size_t n);

    // Unit point scatterer at the centre pixel of a `n` x `n` region.
    SceneConfig point_target_scene(const ArrayGeometry &geometry, std::size_t n = 256, double half_width = 0.5);

    // Three unit scatterers with one double-bounce pair (coupling `coupling`) between the
    // two targets at equal range, imaged over a 3 m x 3 m region with the SIMO arc.
    SceneConfig ghost_scene(std::size_t n = 256, double coupling = 0.3);
}
