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

#include "cfimage/backprojection.hpp"

#include "cfimage/errors.hpp"
#include "cfimage/phasor.hpp"
#include "parallel.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>

namespace cfimage
{
    namespace
    {
        struct FftwPlanDeleter
        {
            void operator()(fftw_plan_s *plan) const { fftw_destroy_plan(plan); }
        };
        using FftwPlan = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

        struct FftwFree
        {
            void operator()(fftw_complex *p) const { fftw_free(p); }
        };
        using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

        FftwBuffer make_buffer(std::size_t n)
        {
            auto *p = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n));
            if (p == nullptr)
                throw std::bad_alloc();
            return FftwBuffer(p);
        }
    }

    ChannelImageStack fast_range_profiles(const EchoData &echo, const ImageRegion &region, std::size_t upsample,
                                          const BackprojectionOptions &options)
    {
        if (upsample < 1)
            throw InputError("upsample factor must be at least 1");
        echo.validate();

        const std::size_t channels = echo.channel_count();
        const std::size_t steps = echo.frequency_count();
        const std::size_t bins = steps * upsample;
        const FrequencyGrid &grid = echo.frequencies();
        const double c = echo.wave_speed();
        // Band centre offset in steps; removing it makes the profile slowly varying between bins.
        const double centre = 0.5 * static_cast<double>(steps - 1);

        // Band-centred profiles on [0, 1/step) plus one wrapped end bin per channel.
        std::vector<Complex> profiles(channels * (bins + 1));
        {
            auto in = make_buffer(bins);
            auto out = make_buffer(bins);
            FftwPlan plan(fftw_plan_dft_1d(static_cast<int>(bins), in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
            if (!plan)
                throw std::runtime_error("FFTW planning failed");

            for (std::size_t ch = 0; ch < channels; ++ch)
            {
                for (std::size_t n = 0; n < bins; ++n)
                {
                    Complex v{0.0, 0.0};
                    if (n < steps)
                    {
                        v = echo(ch, n);
                        if (options.weighting == SpectralWeighting::frequency)
                            v *= grid.frequency(n);
                    }
                    in[n][0] = v.real();
                    in[n][1] = v.imag();
                }
                fftw_execute(plan.get());

                Complex *profile = &profiles[ch * (bins + 1)];
                for (std::size_t n = 0; n <= bins; ++n)
                {
                    const std::size_t src = n % bins;
                    const Complex q{out[src][0], out[src][1]};
                    profile[n] = q * std::conj(unit_phasor(centre * static_cast<double>(n) / static_cast<double>(bins)));
                }
            }
        }

        std::vector<Position2D> tx, rx;
        for (std::size_t ch = 0; ch < channels; ++ch)
        {
            tx.push_back(echo.geometry().channel_tx(ch));
            rx.push_back(echo.geometry().channel_rx(ch));
        }

        ChannelImageStack stack(region, channels);
        detail::parallel_for_blocks(region.ny(), options.threads, [&](std::size_t row_begin, std::size_t row_end)
                                    {
            for (std::size_t l = row_begin; l < row_end; ++l)
                for (std::size_t k = 0; k < region.nx(); ++k)
                {
                    const Position2D p = region.center(k, l);
                    const std::size_t pixel = region.index(k, l);
                    for (std::size_t ch = 0; ch < channels; ++ch)
                    {
                        const long double path = extended_two_way_distance(p, tx[ch], rx[ch]);
                        // Position within one unambiguous period of the step-frequency profile.
                        const long double periods = grid.step() * path / c;
                        const double frac = static_cast<double>(periods - std::floor(periods));
                        const double pos = frac * static_cast<double>(bins);
                        const auto n0 = std::min(static_cast<std::size_t>(pos), bins - 1);
                        const double t = pos - static_cast<double>(n0);

                        const Complex *profile = &profiles[ch * (bins + 1)];
                        const Complex centred = (1.0 - t) * profile[n0] + t * profile[n0 + 1];
                        stack(ch, pixel) = centred * unit_phasor(centre * frac) *
                                           unit_phasor_extended(grid.start() * path / c);
                    }
                } });
        return stack;
    }
}
