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

#include <algorithm>
#include <cmath>

namespace cfimage
{
    // ---------------------------------------------------------------- ImageGrid

    ImageGrid::ImageGrid(const ImageRegion &region) : region_(region), pixels_(region.pixel_count()) {}

    ImageGrid::ImageGrid(const ImageRegion &region, std::vector<Complex> pixels)
        : region_(region), pixels_(std::move(pixels))
    {
        if (pixels_.size() != region_.pixel_count())
            throw InputError("image pixel count does not match its region");
    }

    double ImageGrid::peak_magnitude() const
    {
        double peak = 0.0;
        for (const auto &p : pixels_)
            peak = std::max(peak, std::abs(p));
        return peak;
    }

    std::size_t ImageGrid::peak_index() const
    {
        std::size_t best = 0;
        double peak = -1.0;
        for (std::size_t i = 0; i < pixels_.size(); ++i)
        {
            const double m = std::abs(pixels_[i]);
            if (m > peak)
            {
                peak = m;
                best = i;
            }
        }
        return best;
    }

    // ---------------------------------------------------------------- ImageStack

    ImageStack::ImageStack(const ImageRegion &region, std::size_t depth)
        : region_(region), depth_(depth), data_(depth * region.pixel_count())
    {
    }

    void ImageStack::gather(std::size_t pixel, std::span<Complex> out) const
    {
        for (std::size_t d = 0; d < depth_; ++d)
            out[d] = data_[d * pixel_count() + pixel];
    }

    ImageGrid ImageStack::layer_image(std::size_t d) const
    {
        const auto src = layer(d);
        return ImageGrid(region_, std::vector<Complex>(src.begin(), src.end()));
    }

    // ---------------------------------------------------------------- kernels

    namespace
    {
        void check_echo(const EchoData &echo)
        {
            echo.validate();
        }

        std::vector<double> spectral_weights(const FrequencyGrid &grid, SpectralWeighting weighting)
        {
            std::vector<double> w(grid.count(), 1.0);
            if (weighting == SpectralWeighting::frequency)
                w = grid.values();
            return w;
        }

        struct ChannelPositions
        {
            std::vector<Position2D> tx;
            std::vector<Position2D> rx;
        };

        ChannelPositions channel_positions(const ArrayGeometry &geometry)
        {
            ChannelPositions cp;
            for (std::size_t k = 0; k < geometry.channel_count(); ++k)
            {
                cp.tx.push_back(geometry.channel_tx(k));
                cp.rx.push_back(geometry.channel_rx(k));
            }
            return cp;
        }
    }

    ChannelImageStack channel_images(const EchoData &echo, const ImageRegion &region,
                                     const BackprojectionOptions &options)
    {
        check_echo(echo);
        const std::size_t channels = echo.channel_count();
        const std::size_t steps = echo.frequency_count();
        const FrequencyGrid &grid = echo.frequencies();
        const auto weights = spectral_weights(echo.frequencies(), options.weighting);
        const auto pos = channel_positions(echo.geometry());
        const double c = echo.wave_speed();

        ChannelImageStack stack(region, channels);
        detail::parallel_for_blocks(region.ny(), options.threads, [&](std::size_t row_begin, std::size_t row_end)
                                    {
            std::vector<Complex> ladder(steps);
            for (std::size_t l = row_begin; l < row_end; ++l)
                for (std::size_t k = 0; k < region.nx(); ++k)
                {
                    const Position2D p = region.center(k, l);
                    const std::size_t pixel = region.index(k, l);
                    for (std::size_t ch = 0; ch < channels; ++ch)
                    {
                        const long double path = extended_two_way_distance(p, pos.tx[ch], pos.rx[ch]);
                        fill_phasor_ladder(grid.start(), grid.step(), path, c, ladder);
                        const Complex *e = &echo(ch, 0);
                        Complex sum{0.0, 0.0};
                        for (std::size_t i = 0; i < steps; ++i)
                            sum += weights[i] * (e[i] * ladder[i]);
                        stack(ch, pixel) = sum;
                    }
                } });
        return stack;
    }

    FrequencyImageStack frequency_images(const EchoData &echo, const ImageRegion &region,
                                         const BackprojectionOptions &options)
    {
        check_echo(echo);
        const std::size_t channels = echo.channel_count();
        const std::size_t steps = echo.frequency_count();
        const FrequencyGrid &grid = echo.frequencies();
        const auto pos = channel_positions(echo.geometry());
        const double c = echo.wave_speed();

        FrequencyImageStack stack(region, echo.frequencies());
        detail::parallel_for_blocks(region.ny(), options.threads, [&](std::size_t row_begin, std::size_t row_end)
                                    {
            std::vector<Complex> acc(steps);
            std::vector<Complex> ladder(steps);
            for (std::size_t l = row_begin; l < row_end; ++l)
                for (std::size_t k = 0; k < region.nx(); ++k)
                {
                    const Position2D p = region.center(k, l);
                    const std::size_t pixel = region.index(k, l);
                    std::fill(acc.begin(), acc.end(), Complex{0.0, 0.0});
                    for (std::size_t ch = 0; ch < channels; ++ch)
                    {
                        const long double path = extended_two_way_distance(p, pos.tx[ch], pos.rx[ch]);
                        fill_phasor_ladder(grid.start(), grid.step(), path, c, ladder);
                        const Complex *e = &echo(ch, 0);
                        for (std::size_t i = 0; i < steps; ++i)
                            acc[i] += e[i] * ladder[i];
                    }
                    for (std::size_t i = 0; i < steps; ++i)
                        stack(i, pixel) = acc[i];
                } });
        return stack;
    }

    ImageGrid image_from_channels(const ChannelImageStack &stack)
    {
        if (stack.depth() == 0)
            throw InputError("cannot form an image from an empty channel stack");
        ImageGrid image(stack.region());
        for (std::size_t d = 0; d < stack.depth(); ++d)
        {
            const auto layer = stack.layer(d);
            for (std::size_t p = 0; p < layer.size(); ++p)
                image[p] += layer[p];
        }
        return image;
    }

    ImageGrid image_from_frequencies(const FrequencyImageStack &stack, SpectralWeighting weighting)
    {
        if (stack.depth() == 0)
            throw InputError("cannot form an image from an empty frequency stack");
        const auto weights = spectral_weights(stack.frequencies(), weighting);
        ImageGrid image(stack.region());
        for (std::size_t d = 0; d < stack.depth(); ++d)
        {
            const auto layer = stack.layer(d);
            for (std::size_t p = 0; p < layer.size(); ++p)
                image[p] += weights[d] * layer[p];
        }
        return image;
    }

    ImageGrid backproject(const EchoData &echo, const ImageRegion &region, const BackprojectionOptions &options)
    {
        return image_from_channels(channel_images(echo, region, options));
    }

    double relative_linf(std::span<const Complex> a, std::span<const Complex> b)
    {
        if (a.size() != b.size())
            throw InputError("relative_linf: size mismatch");
        double peak = 0.0;
        double err = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            peak = std::max(peak, std::abs(a[i]));
            err = std::max(err, std::abs(a[i] - b[i]));
        }
        return peak > 0.0 ? err / peak : err;
    }
}
