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

#include <complex>
#include <cstddef>
#include <vector>

namespace cfimage
{
    inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

    struct Position2D
    {
        double x = 0.0; // m
        double y = 0.0; // m

        friend bool operator==(const Position2D &, const Position2D &) = default;
    };

    Position2D operator+(Position2D a, Position2D b) noexcept;
    Position2D operator-(Position2D a, Position2D b) noexcept;

    double distance(Position2D a, Position2D b) noexcept;

    // Path length transmitter -> target -> receiver.
    double two_way_distance(Position2D target, Position2D tx, Position2D rx) noexcept;

    // Full: every (m, n) transmitter/receiver pair is a channel, index m * N + n.
    // Monostatic: transmitter m is co-located with receiver m, index m only.
    enum class ChannelMode
    {
        full,
        monostatic
    };

    struct Channel
    {
        std::size_t tx = 0;
        std::size_t rx = 0;
    };

    class ArrayGeometry
    {
    public:
        // Full MIMO/SIMO channel set.
        ArrayGeometry(std::vector<Position2D> transmitters, std::vector<Position2D> receivers);

        // Co-located transmit/receive elements, one channel per element.
        static ArrayGeometry monostatic(std::vector<Position2D> elements);

        const std::vector<Position2D> &transmitters() const noexcept { return tx_; }
        const std::vector<Position2D> &receivers() const noexcept { return rx_; }
        ChannelMode mode() const noexcept { return mode_; }

        std::size_t channel_count() const noexcept;
        Channel channel(std::size_t k) const;
        Position2D channel_tx(std::size_t k) const { return tx_[channel(k).tx]; }
        Position2D channel_rx(std::size_t k) const { return rx_[channel(k).rx]; }

        ArrayGeometry translated(Position2D offset) const;

        friend bool operator==(const ArrayGeometry &, const ArrayGeometry &) = default;

    private:
        ArrayGeometry(std::vector<Position2D> tx, std::vector<Position2D> rx, ChannelMode mode);

        std::vector<Position2D> tx_;
        std::vector<Position2D> rx_;
        ChannelMode mode_;
    };

    // Step-frequency ladder f_i = start + i * step, i = 0 .. count-1.
    class FrequencyGrid
    {
    public:
        FrequencyGrid(double start, double step, std::size_t count);

        // Grid whose first and last points are start and stop (step = span / (count - 1)).
        static FrequencyGrid inclusive(double start, double stop, std::size_t count);

        double start() const noexcept { return start_; }
        double step() const noexcept { return step_; }
        std::size_t count() const noexcept { return count_; }
        double frequency(std::size_t i) const noexcept { return start_ + static_cast<double>(i) * step_; }
        std::vector<double> values() const;

        // Nominal bandwidth count * step, used for the range resolution c / (2 B).
        double bandwidth() const noexcept { return static_cast<double>(count_) * step_; }

        friend bool operator==(const FrequencyGrid &, const FrequencyGrid &) = default;

    private:
        double start_;
        double step_;
        std::size_t count_;
    };

    // Rectangular imaging region sampled at pixel centers.
    // Pixel (k, l) has x index k (column) and y index l (row); storage is row-major, index l * nx + k.
    class ImageRegion
    {
    public:
        ImageRegion(double x_min, double x_max, double y_min, double y_max, std::size_t nx, std::size_t ny);

        double x_min() const noexcept { return x_min_; }
        double x_max() const noexcept { return x_max_; }
        double y_min() const noexcept { return y_min_; }
        double y_max() const noexcept { return y_max_; }
        std::size_t nx() const noexcept { return nx_; }
        std::size_t ny() const noexcept { return ny_; }
        std::size_t pixel_count() const noexcept { return nx_ * ny_; }

        double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(nx_); }
        double dy() const noexcept { return (y_max_ - y_min_) / static_cast<double>(ny_); }
        double x_center(std::size_t k) const noexcept { return x_min_ + (static_cast<double>(k) + 0.5) * dx(); }
        double y_center(std::size_t l) const noexcept { return y_min_ + (static_cast<double>(l) + 0.5) * dy(); }
        Position2D center(std::size_t k, std::size_t l) const noexcept { return {x_center(k), y_center(l)}; }
        Position2D center(std::size_t index) const noexcept { return center(index % nx_, index / nx_); }

        std::size_t index(std::size_t k, std::size_t l) const noexcept { return l * nx_ + k; }

        bool contains(Position2D p) const noexcept;
        // Column / row whose pixel contains p; p must lie inside the region.
        std::size_t column_of(double x) const;
        std::size_t row_of(double y) const;
        std::size_t index_of(Position2D p) const { return index(column_of(p.x), row_of(p.y)); }

        ImageRegion translated(Position2D offset) const;

        friend bool operator==(const ImageRegion &, const ImageRegion &) = default;

    private:
        double x_min_;
        double x_max_;
        double y_min_;
        double y_max_;
        std::size_t nx_;
        std::size_t ny_;
    };

    struct Scatterer
    {
        Position2D position;
        std::complex<double> reflectivity{1.0, 0.0};
    };

    // Double-bounce interaction between two scatterers (indices into SceneConfig::scatterers).
    struct MultipathPair
    {
        std::size_t first = 0;
        std::size_t second = 0;
        std::complex<double> coupling{0.0, 0.0};
    };

    struct SceneConfig
    {
        std::vector<Scatterer> scatterers;
        std::vector<MultipathPair> multipath;
        ArrayGeometry geometry;
        FrequencyGrid frequencies;
        ImageRegion region;
        double wave_speed = kSpeedOfLight;
        bool spreading_loss = false; // amplitude 1 / (R_tx * R_rx) when set

        // Throws InputError on an empty scene, a non-positive wave speed,
        // non-finite reflectivities or invalid multipath pairs.
        void validate() const;
    };

    // `count` points on a circle of `radius` around the origin, uniformly spaced in angle over
    // [center - aperture / 2, center + aperture / 2] (degrees, counter-clockwise from +x).
    std::vector<Position2D> arc_receiver_array(double radius, double aperture_deg, std::size_t count,
                                               double center_deg = 90.0);

    // Equivalent monostatic positions of a turntable ISAR measurement.
    ArrayGeometry turntable_geometry(double radius, double angle_span_deg, std::size_t count,
                                     double center_deg = 90.0);
}
