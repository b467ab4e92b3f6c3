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

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cfimage
{
    // Scattered-field samples E(tx, rx, f) for every channel and frequency.
    // Storage is channel-major, frequency-minor.
    class EchoData
    {
    public:
        EchoData(ArrayGeometry geometry, FrequencyGrid frequencies, double wave_speed);
        EchoData(ArrayGeometry geometry, FrequencyGrid frequencies, double wave_speed,
                 std::vector<std::complex<double>> samples);

        const ArrayGeometry &geometry() const noexcept { return geometry_; }
        const FrequencyGrid &frequencies() const noexcept { return frequencies_; }
        double wave_speed() const noexcept { return wave_speed_; }

        std::size_t channel_count() const noexcept { return geometry_.channel_count(); }
        std::size_t frequency_count() const noexcept { return frequencies_.count(); }

        std::complex<double> &operator()(std::size_t channel, std::size_t freq)
        {
            return samples_[channel * frequency_count() + freq];
        }
        const std::complex<double> &operator()(std::size_t channel, std::size_t freq) const
        {
            return samples_[channel * frequency_count() + freq];
        }

        std::span<const std::complex<double>> channel(std::size_t k) const
        {
            return std::span(samples_).subspan(k * frequency_count(), frequency_count());
        }
        const std::vector<std::complex<double>> &samples() const noexcept { return samples_; }
        std::vector<std::complex<double>> &samples() noexcept { return samples_; }

        // Throws InputError if the sample count disagrees with the metadata or a sample is not finite.
        void validate() const;

    private:
        ArrayGeometry geometry_;
        FrequencyGrid frequencies_;
        double wave_speed_;
        std::vector<std::complex<double>> samples_;
    };

    // Direct (single-bounce) returns of the point scatterers.
    EchoData simulate_direct(const SceneConfig &scene);

    // Direct returns plus both orderings of every double-bounce multipath pair.
    EchoData simulate_with_multipath(const SceneConfig &scene);

    inline constexpr double kNoiseFree = std::numeric_limits<double>::infinity();

    // Adds circular complex Gaussian noise at the given mean-power SNR.
    // snr_db = +inf returns the echo unchanged.
    EchoData add_noise(const EchoData &echo, double snr_db, std::uint64_t seed);
}
