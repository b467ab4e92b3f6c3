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

#include "cfimage/forward.hpp"
#include "cfimage/geometry.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cfimage
{
    using Complex = std::complex<double>;

    // Complex image over an ImageRegion, row-major (ny rows of nx pixels).
    class ImageGrid
    {
    public:
        explicit ImageGrid(const ImageRegion &region);
        ImageGrid(const ImageRegion &region, std::vector<Complex> pixels);

        const ImageRegion &region() const noexcept { return region_; }
        std::size_t size() const noexcept { return pixels_.size(); }

        Complex &operator[](std::size_t index) { return pixels_[index]; }
        const Complex &operator[](std::size_t index) const { return pixels_[index]; }
        Complex &at(std::size_t k, std::size_t l) { return pixels_[region_.index(k, l)]; }
        const Complex &at(std::size_t k, std::size_t l) const { return pixels_[region_.index(k, l)]; }

        const std::vector<Complex> &pixels() const noexcept { return pixels_; }
        std::vector<Complex> &pixels() noexcept { return pixels_; }

        // Largest magnitude and the lowest row-major index attaining it.
        double peak_magnitude() const;
        std::size_t peak_index() const;

    private:
        ImageRegion region_;
        std::vector<Complex> pixels_;
    };

    // Depth x pixel_count complex layers over one region.
    class ImageStack
    {
    public:
        ImageStack(const ImageRegion &region, std::size_t depth);

        const ImageRegion &region() const noexcept { return region_; }
        std::size_t depth() const noexcept { return depth_; }
        std::size_t pixel_count() const noexcept { return region_.pixel_count(); }

        std::span<Complex> layer(std::size_t d)
        {
            return std::span(data_).subspan(d * pixel_count(), pixel_count());
        }
        std::span<const Complex> layer(std::size_t d) const
        {
            return std::span(data_).subspan(d * pixel_count(), pixel_count());
        }
        Complex &operator()(std::size_t d, std::size_t pixel) { return data_[d * pixel_count() + pixel]; }
        const Complex &operator()(std::size_t d, std::size_t pixel) const { return data_[d * pixel_count() + pixel]; }

        // Values of every layer at one pixel, in layer order.
        void gather(std::size_t pixel, std::span<Complex> out) const;

        ImageGrid layer_image(std::size_t d) const;

    private:
        ImageRegion region_;
        std::size_t depth_;
        std::vector<Complex> data_;
    };

    // Per-channel images y_mn(r), one layer per channel in canonical channel order.
    class ChannelImageStack : public ImageStack
    {
    public:
        using ImageStack::ImageStack;
    };

    // Per-frequency images y_i(r), one layer per step of the frequency ladder.
    class FrequencyImageStack : public ImageStack
    {
    public:
        FrequencyImageStack(const ImageRegion &region, const FrequencyGrid &frequencies)
            : ImageStack(region, frequencies.count()), frequencies_(frequencies) {}

        const FrequencyGrid &frequencies() const noexcept { return frequencies_; }

    private:
        FrequencyGrid frequencies_;
    };

    // Spectral weight applied across the frequency sum: uniform (w_i = 1) or
    // proportional to frequency (w_i = f_i, the continuous-integral measure).
    enum class SpectralWeighting
    {
        uniform,
        frequency
    };

    struct BackprojectionOptions
    {
        SpectralWeighting weighting = SpectralWeighting::uniform;
        unsigned threads = 0; // 0: hardware concurrency
    };

    ChannelImageStack channel_images(const EchoData &echo, const ImageRegion &region,
                                     const BackprojectionOptions &options = {});

    ImageGrid image_from_channels(const ChannelImageStack &stack);

    // Layers carry no spectral weight; the weight enters in image_from_frequencies.
    FrequencyImageStack frequency_images(const EchoData &echo, const ImageRegion &region,
                                         const BackprojectionOptions &options = {});

    ImageGrid image_from_frequencies(const FrequencyImageStack &stack,
                                     SpectralWeighting weighting = SpectralWeighting::uniform);

    // Range profiles by zero-padded inverse FFT of each channel's spectrum, mapped onto the
    // pixel delays by linear interpolation of the band-centred profile.
    ChannelImageStack fast_range_profiles(const EchoData &echo, const ImageRegion &region,
                                          std::size_t upsample = 8, const BackprojectionOptions &options = {});

    // Convenience: image_from_channels(channel_images(echo, region, options)).
    ImageGrid backproject(const EchoData &echo, const ImageRegion &region, const BackprojectionOptions &options = {});

    // Max pixel magnitude of (a - b) divided by the peak magnitude of a.
    double relative_linf(std::span<const Complex> a, std::span<const Complex> b);
}
