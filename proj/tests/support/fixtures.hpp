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

#include "brute_force.hpp"

#include "cfimage/backprojection.hpp"
#include "cfimage/forward.hpp"
#include "cfimage/geometry.hpp"

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

namespace fixtures
{
    inline oracle::Point to_point(cfimage::Position2D p) { return {p.x, p.y}; }

    inline std::complex<double> to_double(oracle::Cplx v)
    {
        return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
    }

    inline std::vector<oracle::PointTarget> targets_of(const cfimage::SceneConfig &scene)
    {
        std::vector<oracle::PointTarget> out;
        for (const auto &s : scene.scatterers)
            out.push_back({to_point(s.position), {s.reflectivity.real(), s.reflectivity.imag()}});
        return out;
    }

    inline std::vector<oracle::Bounce> bounces_of(const cfimage::SceneConfig &scene)
    {
        std::vector<oracle::Bounce> out;
        for (const auto &m : scene.multipath)
            out.push_back({m.first, m.second, {m.coupling.real(), m.coupling.imag()}});
        return out;
    }

    // Largest |a - b| over the vectors, divided by max |a|.
    template <class A, class B>
    double relative_error(const std::vector<A> &a, const std::vector<B> &b)
    {
        long double num = 0, den = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            const std::complex<long double> x(a[i].real(), a[i].imag());
            const std::complex<long double> y(b[i].real(), b[i].imag());
            num = std::max(num, std::abs(x - y));
            den = std::max(den, std::abs(x));
        }
        return static_cast<double>(num / den);
    }

    // Random scene with up to `max_scatterers` targets, up to `max_channels` channels and
    // up to `max_freqs` frequencies, imaged over an n x n region around the origin.
    inline cfimage::SceneConfig random_scene(std::mt19937_64 &rng, std::size_t max_scatterers = 5,
                                             std::size_t max_channels = 16, std::size_t max_freqs = 32,
                                             std::size_t n = 64)
    {
        using namespace cfimage;
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::uniform_int_distribution<std::size_t> n_scat(1, max_scatterers);
        std::uniform_int_distribution<std::size_t> n_freq(1, max_freqs);
        std::uniform_int_distribution<int> layout(0, 2);

        std::vector<Scatterer> scatterers(n_scat(rng));
        for (auto &s : scatterers)
        {
            s.position = {0.8 * unit(rng), 0.8 * unit(rng)};
            s.reflectivity = {unit(rng), unit(rng)};
        }

        const auto geometry = [&]() -> ArrayGeometry
        {
            const double radius = 6.0 + 4.0 * (unit(rng) + 1.0);
            const double aperture = 4.0 + 6.0 * (unit(rng) + 1.0);
            switch (layout(rng))
            {
            case 0:
            {
                std::uniform_int_distribution<std::size_t> count(1, max_channels);
                return turntable_geometry(radius, aperture, count(rng));
            }
            case 1:
            {
                std::uniform_int_distribution<std::size_t> count(1, max_channels);
                return ArrayGeometry(arc_receiver_array(radius, 0.0, 1), arc_receiver_array(radius, aperture, count(rng)));
            }
            default:
            {
                std::uniform_int_distribution<std::size_t> side(1, 4);
                const std::size_t m = side(rng), nr = std::max<std::size_t>(1, std::min<std::size_t>(side(rng), max_channels / m));
                return ArrayGeometry(arc_receiver_array(radius, aperture, m, 80.0),
                                     arc_receiver_array(radius, aperture, nr, 100.0));
            }
            }
        }();

        std::vector<MultipathPair> pairs;
        if (scatterers.size() >= 2 && layout(rng) == 0)
            pairs.push_back({0, 1, {0.5 * unit(rng), 0.5 * unit(rng)}});

        const double f0 = 8e9 + 1e9 * (unit(rng) + 1.0);
        const std::size_t count = n_freq(rng);
        return SceneConfig{
            .scatterers = scatterers,
            .multipath = pairs,
            .geometry = geometry,
            .frequencies = FrequencyGrid(f0, 1e9 / static_cast<double>(std::max<std::size_t>(count, 2) - 1), count),
            .region = ImageRegion(-1.0, 1.0, -1.0, 1.0, n, n),
        };
    }
}
