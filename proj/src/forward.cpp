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

#include "cfimage/forward.hpp"

#include "cfimage/errors.hpp"
#include "cfimage/phasor.hpp"

#include <cmath>
#include <random>

namespace cfimage
{
    EchoData::EchoData(ArrayGeometry geometry, FrequencyGrid frequencies, double wave_speed)
        : geometry_(std::move(geometry)), frequencies_(frequencies), wave_speed_(wave_speed),
          samples_(geometry_.channel_count() * frequencies_.count())
    {
        if (!std::isfinite(wave_speed) || wave_speed <= 0.0)
            throw InputError("wave speed must be positive");
    }

    EchoData::EchoData(ArrayGeometry geometry, FrequencyGrid frequencies, double wave_speed,
                       std::vector<std::complex<double>> samples)
        : EchoData(std::move(geometry), frequencies, wave_speed)
    {
        if (samples.size() != samples_.size())
            throw InputError("echo sample count does not match channels x frequencies");
        samples_ = std::move(samples);
        validate();
    }

    void EchoData::validate() const
    {
        if (samples_.size() != channel_count() * frequency_count())
            throw InputError("echo sample count does not match channels x frequencies");
        for (const auto &s : samples_)
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw InputError("echo contains non-finite samples");
    }

    namespace
    {
        long double leg(Position2D a, Position2D b, bool spreading)
        {
            const long double d = extended_distance(a, b);
            if (spreading && d == 0.0)
                throw InputError("spreading loss is undefined for a zero-length propagation leg");
            return d;
        }

        // One propagation path: complex weight and total path length.
        struct Path
        {
            std::complex<double> weight;
            long double length;
        };

        template <class PathFn>
        void accumulate_paths(const SceneConfig &scene, EchoData &echo, PathFn &&paths_of_channel)
        {
            std::vector<Path> paths;
            for (std::size_t k = 0; k < echo.channel_count(); ++k)
            {
                paths.clear();
                paths_of_channel(echo.geometry().channel_tx(k), echo.geometry().channel_rx(k), paths);
                for (std::size_t i = 0; i < echo.frequency_count(); ++i)
                {
                    const FrequencyGrid &grid = scene.frequencies;
                    std::complex<double> sum{0.0, 0.0};
                    for (const auto &p : paths)
                        sum += p.weight * std::conj(unit_phasor_extended(
                                              ladder_turns(grid.start(), grid.step(), i, p.length, scene.wave_speed)));
                    echo(k, i) = sum;
                }
            }
        }

        void direct_paths(const SceneConfig &scene, Position2D tx, Position2D rx, std::vector<Path> &out)
        {
            for (const auto &s : scene.scatterers)
            {
                const long double d_tx = leg(tx, s.position, scene.spreading_loss);
                const long double d_rx = leg(s.position, rx, scene.spreading_loss);
                const double amplitude = scene.spreading_loss ? static_cast<double>(1.0L / (d_tx * d_rx)) : 1.0;
                out.push_back({s.reflectivity * amplitude, d_tx + d_rx});
            }
        }

        void multipath_paths(const SceneConfig &scene, Position2D tx, Position2D rx, std::vector<Path> &out)
        {
            for (const auto &mp : scene.multipath)
            {
                const auto &a = scene.scatterers[mp.first];
                const auto &b = scene.scatterers[mp.second];
                const std::complex<double> weight = mp.coupling * a.reflectivity * b.reflectivity;
                const long double d_ab = leg(a.position, b.position, scene.spreading_loss);

                // tx -> a -> b -> rx, then the reciprocal tx -> b -> a -> rx
                for (const auto &[first, second] : {std::pair{&a, &b}, std::pair{&b, &a}})
                {
                    const long double d_in = leg(tx, first->position, scene.spreading_loss);
                    const long double d_out = leg(second->position, rx, scene.spreading_loss);
                    const double amplitude =
                        scene.spreading_loss ? static_cast<double>(1.0L / (d_in * d_ab * d_out)) : 1.0;
                    out.push_back({weight * amplitude, d_in + d_ab + d_out});
                }
            }
        }
    }

    EchoData simulate_direct(const SceneConfig &scene)
    {
        scene.validate();
        EchoData echo(scene.geometry, scene.frequencies, scene.wave_speed);
        accumulate_paths(scene, echo, [&](Position2D tx, Position2D rx, std::vector<Path> &paths)
                         { direct_paths(scene, tx, rx, paths); });
        return echo;
    }

    EchoData simulate_with_multipath(const SceneConfig &scene)
    {
        scene.validate();
        EchoData echo(scene.geometry, scene.frequencies, scene.wave_speed);
        accumulate_paths(scene, echo, [&](Position2D tx, Position2D rx, std::vector<Path> &paths)
                         {
                             direct_paths(scene, tx, rx, paths);
                             multipath_paths(scene, tx, rx, paths); });
        return echo;
    }

    EchoData add_noise(const EchoData &echo, double snr_db, std::uint64_t seed)
    {
        if (std::isnan(snr_db))
            throw InputError("SNR must be a number");
        EchoData noisy = echo;
        if (snr_db == kNoiseFree)
            return noisy;

        double signal_power = 0.0;
        for (const auto &s : echo.samples())
            signal_power += std::norm(s);
        signal_power /= static_cast<double>(echo.samples().size());

        const double noise_power = signal_power / std::pow(10.0, snr_db / 10.0);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> component(0.0, std::sqrt(0.5 * noise_power));
        for (auto &s : noisy.samples())
        {
            const double re = component(rng);
            const double im = component(rng);
            s += std::complex<double>(re, im);
        }
        return noisy;
    }
}
