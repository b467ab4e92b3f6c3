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

#include "cfimage/coherence.hpp"

#include "cfimage/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cfimage
{
    std::string_view to_string(MapKind kind) noexcept
    {
        switch (kind)
        {
        case MapKind::cf:
            return "cf";
        case MapKind::cff:
            return "cff";
        case MapKind::cf2d:
            return "cf2d";
        case MapKind::pcf:
            return "pcf";
        case MapKind::pcff:
            return "pcff";
        case MapKind::pcf2d:
            return "pcf2d";
        }
        return "unknown";
    }

    std::optional<MapKind> parse_map_kind(std::string_view name) noexcept
    {
        for (MapKind kind : kAllMapKinds)
            if (to_string(kind) == name)
                return kind;
        return std::nullopt;
    }

    CoherenceMap::CoherenceMap(const ImageRegion &region, MapKind kind, std::vector<double> values)
        : region_(region), kind_(kind), values_(std::move(values))
    {
        if (values_.size() != region_.pixel_count())
            throw InputError("coherence map size does not match its region");
        for (double v : values_)
            if (!(v >= 0.0 && v <= 1.0))
                throw InputError("coherence map value outside [0, 1]");
    }

    double coherence_factor(std::span<const Complex> terms)
    {
        if (terms.empty())
            throw InputError("coherence factor of an empty set");
        Complex coherent{0.0, 0.0};
        double incoherent = 0.0;
        for (const auto &y : terms)
        {
            coherent += y;
            incoherent += std::norm(y);
        }
        if (incoherent == 0.0)
            return 0.0;
        return std::norm(coherent) / (static_cast<double>(terms.size()) * incoherent);
    }

    double phase_coherence_factor(std::span<const Complex> terms)
    {
        if (terms.empty())
            throw InputError("phase coherence factor of an empty set");
        const double n = static_cast<double>(terms.size());

        auto unit = [](const Complex &y)
        {
            const double m = std::abs(y);
            return m > 0.0 ? y / m : Complex{1.0, 0.0};
        };

        Complex mean{0.0, 0.0};
        for (const auto &y : terms)
            mean += unit(y);
        mean /= n;

        double var_cos = 0.0;
        double var_sin = 0.0;
        for (const auto &y : terms)
        {
            const Complex d = unit(y) - mean;
            var_cos += d.real() * d.real();
            var_sin += d.imag() * d.imag();
        }
        return 1.0 - std::sqrt((var_cos + var_sin) / n);
    }

    double clamp_unit(double value)
    {
        if (!(value >= -kMapSlack && value <= 1.0 + kMapSlack))
            throw ConsistencyError("coherence value " + std::to_string(value) + " outside [0, 1]");
        return std::clamp(value, 0.0, 1.0);
    }

    namespace
    {
        template <class Factor>
        CoherenceMap stack_map(const ImageStack &stack, MapKind kind, Factor &&factor)
        {
            if (stack.depth() == 0)
                throw InputError("coherence map of an empty stack");
            std::vector<double> values(stack.pixel_count());
            std::vector<Complex> terms(stack.depth());
            for (std::size_t p = 0; p < values.size(); ++p)
            {
                stack.gather(p, terms);
                values[p] = clamp_unit(factor(std::span<const Complex>(terms)));
            }
            return CoherenceMap(stack.region(), kind, std::move(values));
        }

        CoherenceMap product_map(const CoherenceMap &a, MapKind expect_a, const CoherenceMap &b, MapKind expect_b,
                                 MapKind result)
        {
            if (a.kind() != expect_a || b.kind() != expect_b)
                throw InputError(std::string("expected ") + std::string(to_string(expect_a)) + " and " +
                                 std::string(to_string(expect_b)) + " maps");
            if (!(a.region() == b.region()))
                throw InputError("coherence maps cover different regions");
            std::vector<double> values(a.size());
            for (std::size_t p = 0; p < values.size(); ++p)
                values[p] = a[p] * b[p];
            return CoherenceMap(a.region(), result, std::move(values));
        }
    }

    CoherenceMap cf_spatial(const ChannelImageStack &stack)
    {
        return stack_map(stack, MapKind::cf, coherence_factor);
    }

    CoherenceMap cf_frequency(const FrequencyImageStack &stack)
    {
        return stack_map(stack, MapKind::cff, coherence_factor);
    }

    CoherenceMap cf_2d(const CoherenceMap &spatial, const CoherenceMap &frequency)
    {
        return product_map(spatial, MapKind::cf, frequency, MapKind::cff, MapKind::cf2d);
    }

    CoherenceMap pcf_spatial(const ChannelImageStack &stack)
    {
        return stack_map(stack, MapKind::pcf, phase_coherence_factor);
    }

    CoherenceMap pcf_frequency(const FrequencyImageStack &stack)
    {
        return stack_map(stack, MapKind::pcff, phase_coherence_factor);
    }

    CoherenceMap pcf_2d(const CoherenceMap &spatial, const CoherenceMap &frequency)
    {
        return product_map(spatial, MapKind::pcf, frequency, MapKind::pcff, MapKind::pcf2d);
    }

    ImageGrid apply_map(const ImageGrid &image, const CoherenceMap &map)
    {
        if (!(image.region() == map.region()))
            throw InputError("image and coherence map cover different regions");
        ImageGrid out = image;
        for (std::size_t p = 0; p < out.size(); ++p)
            out[p] *= map[p];
        return out;
    }

    const CoherenceMap &CoherenceMaps::get(MapKind kind) const
    {
        switch (kind)
        {
        case MapKind::cf:
            return cf;
        case MapKind::cff:
            return cff;
        case MapKind::cf2d:
            return cf2d;
        case MapKind::pcf:
            return pcf;
        case MapKind::pcff:
            return pcff;
        case MapKind::pcf2d:
            return pcf2d;
        }
        throw InputError("unknown map kind");
    }

    CoherenceMaps compute_all_maps(const ChannelImageStack &channels, const FrequencyImageStack &frequencies)
    {
        auto cf = cf_spatial(channels);
        auto cff = cf_frequency(frequencies);
        auto cf2 = cf_2d(cf, cff);
        auto pcf = pcf_spatial(channels);
        auto pcff = pcf_frequency(frequencies);
        auto pcf2 = pcf_2d(pcf, pcff);
        return {std::move(cf), std::move(cff), std::move(cf2), std::move(pcf), std::move(pcff), std::move(pcf2)};
    }
}
