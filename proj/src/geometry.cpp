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

#include "cfimage/geometry.hpp"

#include "cfimage/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cfimage
{
    namespace
    {
        bool finite(Position2D p) { return std::isfinite(p.x) && std::isfinite(p.y); }

        void require_finite(const std::vector<Position2D> &positions, const char *what)
        {
            for (const auto &p : positions)
                if (!finite(p))
                    throw InputError(std::string(what) + " position is not finite");
        }

        double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
    }

    Position2D operator+(Position2D a, Position2D b) noexcept { return {a.x + b.x, a.y + b.y}; }
    Position2D operator-(Position2D a, Position2D b) noexcept { return {a.x - b.x, a.y - b.y}; }

    double distance(Position2D a, Position2D b) noexcept
    {
        const double dx = a.x - b.x;
        const double dy = a.y - b.y;
        return std::sqrt(dx * dx + dy * dy);
    }

    double two_way_distance(Position2D target, Position2D tx, Position2D rx) noexcept
    {
        return distance(target, tx) + distance(target, rx);
    }

    // ---------------------------------------------------------------- ArrayGeometry

    ArrayGeometry::ArrayGeometry(std::vector<Position2D> tx, std::vector<Position2D> rx, ChannelMode mode)
        : tx_(std::move(tx)), rx_(std::move(rx)), mode_(mode)
    {
        if (tx_.empty())
            throw InputError("array geometry needs at least one transmitter");
        if (rx_.empty())
            throw InputError("array geometry needs at least one receiver");
        require_finite(tx_, "transmitter");
        require_finite(rx_, "receiver");
        if (mode_ == ChannelMode::monostatic && tx_ != rx_)
            throw InputError("monostatic geometry requires co-located transmit and receive elements");
    }

    ArrayGeometry::ArrayGeometry(std::vector<Position2D> transmitters, std::vector<Position2D> receivers)
        : ArrayGeometry(std::move(transmitters), std::move(receivers), ChannelMode::full) {}

    ArrayGeometry ArrayGeometry::monostatic(std::vector<Position2D> elements)
    {
        auto copy = elements;
        return ArrayGeometry(std::move(copy), std::move(elements), ChannelMode::monostatic);
    }

    std::size_t ArrayGeometry::channel_count() const noexcept
    {
        return mode_ == ChannelMode::monostatic ? tx_.size() : tx_.size() * rx_.size();
    }

    Channel ArrayGeometry::channel(std::size_t k) const
    {
        if (k >= channel_count())
            throw InputError("channel index out of range");
        if (mode_ == ChannelMode::monostatic)
            return {k, k};
        return {k / rx_.size(), k % rx_.size()};
    }

    ArrayGeometry ArrayGeometry::translated(Position2D offset) const
    {
        auto shift = [offset](std::vector<Position2D> v)
        {
            for (auto &p : v)
                p = p + offset;
            return v;
        };
        return ArrayGeometry(shift(tx_), shift(rx_), mode_);
    }

    // ---------------------------------------------------------------- FrequencyGrid

    FrequencyGrid::FrequencyGrid(double start, double step, std::size_t count)
        : start_(start), step_(step), count_(count)
    {
        if (!std::isfinite(start) || start <= 0.0)
            throw InputError("start frequency must be positive");
        if (count == 0)
            throw InputError("frequency grid needs at least one step");
        if (!std::isfinite(step) || step <= 0.0)
            throw InputError("frequency step must be positive");
    }

    FrequencyGrid FrequencyGrid::inclusive(double start, double stop, std::size_t count)
    {
        if (count < 2)
            throw InputError("an inclusive frequency grid needs at least two points");
        if (!(stop > start))
            throw InputError("stop frequency must exceed start frequency");
        return FrequencyGrid(start, (stop - start) / static_cast<double>(count - 1), count);
    }

    std::vector<double> FrequencyGrid::values() const
    {
        std::vector<double> f(count_);
        for (std::size_t i = 0; i < count_; ++i)
            f[i] = frequency(i);
        return f;
    }

    // ---------------------------------------------------------------- ImageRegion

    ImageRegion::ImageRegion(double x_min, double x_max, double y_min, double y_max, std::size_t nx, std::size_t ny)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), nx_(nx), ny_(ny)
    {
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max))
            throw InputError("image region bounds must be finite");
        if (!(x_min < x_max) || !(y_min < y_max))
            throw InputError("image region bounds must satisfy min < max");
        if (nx == 0 || ny == 0)
            throw InputError("image region needs at least one pixel per axis");
    }

    bool ImageRegion::contains(Position2D p) const noexcept
    {
        return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
    }

    std::size_t ImageRegion::column_of(double x) const
    {
        if (!(x >= x_min_ && x <= x_max_))
            throw InputError("x position outside the image region");
        const auto k = static_cast<std::size_t>(std::floor((x - x_min_) / dx()));
        return k < nx_ ? k : nx_ - 1;
    }

    std::size_t ImageRegion::row_of(double y) const
    {
        if (!(y >= y_min_ && y <= y_max_))
            throw InputError("y position outside the image region");
        const auto l = static_cast<std::size_t>(std::floor((y - y_min_) / dy()));
        return l < ny_ ? l : ny_ - 1;
    }

    ImageRegion ImageRegion::translated(Position2D offset) const
    {
        return ImageRegion(x_min_ + offset.x, x_max_ + offset.x, y_min_ + offset.y, y_max_ + offset.y, nx_, ny_);
    }

    // ---------------------------------------------------------------- SceneConfig

    void SceneConfig::validate() const
    {
        if (scatterers.empty())
            throw InputError("scene needs at least one scatterer");
        if (!std::isfinite(wave_speed) || wave_speed <= 0.0)
            throw InputError("wave speed must be positive");
        for (const auto &s : scatterers)
        {
            if (!finite(s.position))
                throw InputError("scatterer position is not finite");
            if (!std::isfinite(s.reflectivity.real()) || !std::isfinite(s.reflectivity.imag()))
                throw InputError("scatterer reflectivity is not finite");
        }
        for (const auto &mp : multipath)
        {
            if (mp.first >= scatterers.size() || mp.second >= scatterers.size())
                throw InputError("multipath pair references a missing scatterer");
            if (mp.first == mp.second)
                throw InputError("multipath pair must reference two distinct scatterers");
            if (!std::isfinite(mp.coupling.real()) || !std::isfinite(mp.coupling.imag()))
                throw InputError("multipath coupling is not finite");
        }
    }

    // ---------------------------------------------------------------- arrays

    std::vector<Position2D> arc_receiver_array(double radius, double aperture_deg, std::size_t count,
                                               double center_deg)
    {
        if (!std::isfinite(radius) || radius <= 0.0)
            throw InputError("arc radius must be positive");
        if (count == 0)
            throw InputError("arc needs at least one element");
        if (!std::isfinite(aperture_deg) || aperture_deg < 0.0)
            throw InputError("arc aperture angle must be non-negative");
        if (!std::isfinite(center_deg))
            throw InputError("arc center angle must be finite");

        std::vector<Position2D> positions(count);
        const double step = count > 1 ? aperture_deg / static_cast<double>(count - 1) : 0.0;
        const double first = count > 1 ? center_deg - 0.5 * aperture_deg : center_deg;
        for (std::size_t i = 0; i < count; ++i)
        {
            const double theta = deg2rad(first + static_cast<double>(i) * step);
            positions[i] = {radius * std::cos(theta), radius * std::sin(theta)};
        }
        return positions;
    }

    ArrayGeometry turntable_geometry(double radius, double angle_span_deg, std::size_t count, double center_deg)
    {
        return ArrayGeometry::monostatic(arc_receiver_array(radius, angle_span_deg, count, center_deg));
    }
}
