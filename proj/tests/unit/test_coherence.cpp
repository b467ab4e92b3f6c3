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

#include <catch_amalgamated.hpp>

#include "brute_force.hpp"
#include "fixtures.hpp"

#include "cfimage/coherence.hpp"
#include "cfimage/errors.hpp"
#include "cfimage/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cfimage;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const ImageRegion kOnePixel(0, 1, 0, 1, 1, 1);

    ChannelImageStack channel_stack(const std::vector<Complex> &values)
    {
        ChannelImageStack s(kOnePixel, values.size());
        for (std::size_t d = 0; d < values.size(); ++d)
            s(d, 0) = values[d];
        return s;
    }

    FrequencyImageStack frequency_stack(const std::vector<Complex> &values)
    {
        FrequencyImageStack s(kOnePixel, FrequencyGrid(1e9, 1e6, values.size()));
        for (std::size_t d = 0; d < values.size(); ++d)
            s(d, 0) = values[d];
        return s;
    }

    std::vector<Complex> phases(std::initializer_list<double> radians)
    {
        std::vector<Complex> out;
        for (double r : radians)
            out.push_back(std::polar(1.0, r));
        return out;
    }

    CoherenceMap constant_map(MapKind kind, double v, const ImageRegion &r = kOnePixel)
    {
        return CoherenceMap(r, kind, std::vector<double>(r.pixel_count(), v));
    }

    std::vector<oracle::Cplx> extend(std::span<const Complex> v)
    {
        std::vector<oracle::Cplx> out;
        for (const auto &x : v)
            out.emplace_back(x.real(), x.imag());
        return out;
    }

    std::vector<Complex> random_stack(std::mt19937_64 &rng, std::size_t depth, bool unit_magnitude)
    {
        std::uniform_real_distribution<double> turn(0.0, 1.0);
        std::exponential_distribution<double> mag(1.0);
        std::vector<Complex> v(depth);
        for (auto &x : v)
            x = std::polar(unit_magnitude ? 1.0 : mag(rng), 2.0 * std::numbers::pi * turn(rng));
        return v;
    }

    constexpr double kPi = std::numbers::pi;
}

// ================================================================================================
// Coherence factor
// ================================================================================================

TEST_CASE("cf_spatial - equal channels are fully coherent")
{
    CHECK(cf_spatial(channel_stack({{1, 0}, {1, 0}, {1, 0}, {1, 0}}))[0] == 1.0);
}

TEST_CASE("cf_spatial - opposite channels cancel")
{
    CHECK(cf_spatial(channel_stack({{1, 0}, {-1, 0}}))[0] == 0.0);
}

TEST_CASE("cf_spatial - {1, j, 1} gives 5/9")
{
    CHECK_THAT(cf_spatial(channel_stack({{1, 0}, {0, 1}, {1, 0}}))[0], WithinAbs(5.0 / 9.0, 1e-15));
}

TEST_CASE("cf_frequency - same examples along the frequency axis")
{
    CHECK(cf_frequency(frequency_stack({{0.3, 0.4}, {0.3, 0.4}, {0.3, 0.4}}))[0] == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(cf_frequency(frequency_stack({{1, 0}, {-1, 0}}))[0] == 0.0);
    CHECK_THAT(cf_frequency(frequency_stack({{1, 0}, {0, 1}, {1, 0}}))[0], WithinAbs(5.0 / 9.0, 1e-15));
}

TEST_CASE("coherence_factor - zero energy maps to zero, empty input is rejected")
{
    const std::vector<Complex> zeros(3);
    CHECK(coherence_factor(zeros) == 0.0);
    CHECK(cf_spatial(channel_stack({{0, 0}, {0, 0}}))[0] == 0.0);
    CHECK_THROWS_AS(coherence_factor(std::vector<Complex>{}), InputError);
    CHECK_THROWS_AS(cf_spatial(ChannelImageStack(kOnePixel, 0)), InputError);
}

TEST_CASE("cf_2d - pixelwise product of spatial and frequency maps")
{
    CHECK(cf_2d(constant_map(MapKind::cf, 1.0), constant_map(MapKind::cff, 1.0))[0] == 1.0);
    CHECK(cf_2d(constant_map(MapKind::cf, 0.0), constant_map(MapKind::cff, 0.7))[0] == 0.0);
    const auto a = cf_spatial(channel_stack({{1, 0}, {0, 1}, {1, 0}}));
    const auto b = cf_frequency(frequency_stack({{1, 0}, {0, 1}, {1, 0}}));
    CHECK_THAT(cf_2d(a, b)[0], WithinAbs(25.0 / 81.0, 1e-15));
    CHECK(cf_2d(a, b).kind() == MapKind::cf2d);
}

TEST_CASE("cf_2d - rejects wrong kinds and mismatched regions")
{
    CHECK_THROWS_AS(cf_2d(constant_map(MapKind::cff, 1.0), constant_map(MapKind::cf, 1.0)), InputError);
    CHECK_THROWS_AS(cf_2d(constant_map(MapKind::pcf, 1.0), constant_map(MapKind::cff, 1.0)), InputError);
    const ImageRegion other(0, 2, 0, 1, 1, 1);
    CHECK_THROWS_AS(cf_2d(constant_map(MapKind::cf, 1.0), constant_map(MapKind::cff, 1.0, other)), InputError);
}

// ================================================================================================
// Phase coherence factor
// ================================================================================================

TEST_CASE("pcf_spatial - common phase gives one at any magnitude")
{
    CHECK_THAT(pcf_spatial(channel_stack({std::polar(0.2, 1.1), std::polar(3.0, 1.1), std::polar(1.0, 1.1)}))[0],
               WithinAbs(1.0, 1e-15));
}

TEST_CASE("pcf_spatial - four-fold symmetric phases give zero")
{
    CHECK_THAT(pcf_spatial(channel_stack(phases({0, kPi / 2, kPi, 3 * kPi / 2})))[0], WithinAbs(0.0, 1e-15));
}

TEST_CASE("pcf_spatial - phases {0, pi/2} give 1 - sqrt(1/2)")
{
    CHECK_THAT(pcf_spatial(channel_stack(phases({0, kPi / 2})))[0], WithinAbs(1.0 - std::sqrt(0.5), 1e-15));
    CHECK_THAT(pcf_spatial(channel_stack(phases({0, kPi / 2})))[0], WithinAbs(0.29289, 1e-5));
}

TEST_CASE("pcf_frequency - same examples along the frequency axis")
{
    CHECK_THAT(pcf_frequency(frequency_stack({std::polar(2.0, -0.4), std::polar(0.5, -0.4)}))[0],
               WithinAbs(1.0, 1e-15));
    CHECK_THAT(pcf_frequency(frequency_stack(phases({0, kPi})))[0], WithinAbs(0.0, 1e-15));
    CHECK_THAT(pcf_frequency(frequency_stack(phases({0, kPi / 2})))[0], WithinAbs(0.29289, 1e-5));
}

TEST_CASE("pcf_2d - product of the two phase maps")
{
    CHECK(pcf_2d(constant_map(MapKind::pcf, 1.0), constant_map(MapKind::pcff, 1.0))[0] == 1.0);
    CHECK(pcf_2d(constant_map(MapKind::pcf, 0.0), constant_map(MapKind::pcff, 0.4))[0] == 0.0);
    const auto a = pcf_spatial(channel_stack(phases({0, kPi / 2})));
    const auto b = pcf_frequency(frequency_stack(phases({0, kPi / 2})));
    CHECK_THAT(pcf_2d(a, b)[0], WithinAbs(0.08579, 1e-5));
    CHECK_THROWS_AS(pcf_2d(constant_map(MapKind::cf, 1.0), constant_map(MapKind::pcff, 1.0)), InputError);
}

TEST_CASE("phase_coherence_factor - a zero term counts as phase zero")
{
    CHECK_THAT(phase_coherence_factor(std::vector<Complex>{{0, 0}, {2, 0}}), WithinAbs(1.0, 1e-15));
    CHECK_THAT(phase_coherence_factor(std::vector<Complex>{{0, 0}, {0, 1}}),
               WithinAbs(1.0 - std::sqrt(0.5), 1e-15));
    CHECK_THROWS_AS(phase_coherence_factor(std::vector<Complex>{}), InputError);
}

// ================================================================================================
// apply_map
// ================================================================================================

TEST_CASE("apply_map - ones keep, zeros clear, never amplifies")
{
    const auto scene = presets::ghost_scene(12);
    const auto echo = simulate_with_multipath(scene);
    const auto channels = channel_images(echo, scene.region);
    const auto image = image_from_channels(channels);
    CHECK(apply_map(image, constant_map(MapKind::cf, 1.0, scene.region)).pixels() == image.pixels());
    for (const auto &v : apply_map(image, constant_map(MapKind::cf, 0.0, scene.region)).pixels())
        CHECK(std::abs(v) == 0.0);

    const auto maps = compute_all_maps(channels, frequency_images(echo, scene.region));
    for (MapKind k : kAllMapKinds)
    {
        const auto enhanced = apply_map(image, maps.get(k));
        for (std::size_t p = 0; p < image.size(); ++p)
            CHECK(std::abs(enhanced[p]) <= std::abs(image[p]));
    }
    CHECK_THROWS_AS(apply_map(image, constant_map(MapKind::cf, 1.0)), InputError);
}

// ================================================================================================
// Properties
// ================================================================================================

TEST_CASE("coherence - raw factors stay in [0, 1] on random stacks")
{
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> depth(1, 64);
    double lo = 1.0, hi = 0.0;
    for (int trial = 0; trial < 5000; ++trial)
    {
        const auto v = random_stack(rng, depth(rng), trial % 2 == 0);
        for (double x : {coherence_factor(v), phase_coherence_factor(v)})
        {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    CHECK(lo >= 0.0);
    CHECK(hi <= 1.0 + kMapSlack);
}

TEST_CASE("coherence - unit-magnitude stacks satisfy PCF = 1 - sqrt(1 - CF)")
{
    std::mt19937_64 rng(102);
    std::uniform_int_distribution<std::size_t> depth(1, 64);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const auto v = random_stack(rng, depth(rng), true);
        const double cf = coherence_factor(v);
        CHECK_THAT(phase_coherence_factor(v), WithinAbs(1.0 - std::sqrt(std::max(0.0, 1.0 - cf)), 1e-12));
    }
}

TEST_CASE("coherence - raw factors agree with extended-precision evaluation")
{
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 2000; ++trial)
    {
        const auto v = random_stack(rng, 1 + trial % 4, trial % 3 == 0);
        CHECK_THAT(coherence_factor(v), WithinAbs(static_cast<double>(oracle::coherence_factor(extend(v))), 1e-12));
        CHECK_THAT(phase_coherence_factor(v),
                   WithinAbs(static_cast<double>(oracle::phase_coherence_factor(extend(v))), 1e-12));
    }
}

TEST_CASE("coherence - depth-1 stacks are fully coherent wherever nonzero")
{
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto v = random_stack(rng, 1, false);
        CHECK_THAT(cf_spatial(channel_stack(v))[0], WithinAbs(1.0, 1e-15));
        CHECK(pcf_spatial(channel_stack(v))[0] == 1.0);
    }
}

TEST_CASE("coherence - invariant under a global phase rotation")
{
    std::mt19937_64 rng(105);
    for (int trial = 0; trial < 500; ++trial)
    {
        auto v = random_stack(rng, 2 + trial % 20, false);
        const double cf = coherence_factor(v), pcf = phase_coherence_factor(v);
        const Complex rot = std::polar(1.0, 0.37 + 0.01 * trial);
        for (auto &x : v)
            x *= rot;
        CHECK_THAT(coherence_factor(v), WithinAbs(cf, 1e-12));
        CHECK_THAT(phase_coherence_factor(v), WithinAbs(pcf, 1e-12));
    }
}

TEST_CASE("coherence - PCF ignores per-term positive scaling")
{
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        auto v = random_stack(rng, 2 + trial % 20, false);
        const double pcf = phase_coherence_factor(v);
        for (auto &x : v)
            x *= scale(rng);
        CHECK_THAT(phase_coherence_factor(v), WithinAbs(pcf, 1e-12));
    }
}

TEST_CASE("coherence - 2-D maps never exceed either factor")
{
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 4; ++trial)
    {
        const auto scene = fixtures::random_scene(rng, 5, 16, 32, 16);
        const auto echo = simulate_with_multipath(scene);
        const auto maps = compute_all_maps(channel_images(echo, scene.region), frequency_images(echo, scene.region));
        for (std::size_t p = 0; p < scene.region.pixel_count(); ++p)
        {
            CHECK(maps.cf2d[p] <= std::min(maps.cf[p], maps.cff[p]));
            CHECK(maps.pcf2d[p] <= std::min(maps.pcf[p], maps.pcff[p]));
        }
    }
}

TEST_CASE("coherence - channel and frequency numerators agree")
{
    std::mt19937_64 rng(108);
    for (int trial = 0; trial < 6; ++trial)
    {
        const auto scene = fixtures::random_scene(rng, 5, 16, 32, 16);
        const auto echo = simulate_with_multipath(scene);
        const auto channels = channel_images(echo, scene.region);
        const auto freqs = frequency_images(echo, scene.region);
        std::vector<double> a(scene.region.pixel_count()), b(a.size());
        double peak = 0.0;
        for (std::size_t p = 0; p < a.size(); ++p)
        {
            Complex sa{0, 0}, sb{0, 0};
            for (std::size_t d = 0; d < channels.depth(); ++d)
                sa += channels(d, p);
            for (std::size_t d = 0; d < freqs.depth(); ++d)
                sb += freqs(d, p);
            a[p] = std::norm(sa);
            b[p] = std::norm(sb);
            peak = std::max(peak, a[p]);
        }
        for (std::size_t p = 0; p < a.size(); ++p)
            CHECK(std::abs(a[p] - b[p]) <= 1e-12 * peak);
    }
}

TEST_CASE("coherence - all six maps are one at a noise-free point target")
{
    for (const auto &geometry : {presets::turntable_arc_geometry(), presets::simo_arc_geometry()})
    {
        const auto scene = presets::point_target_scene(geometry, 8);
        const auto echo = simulate_direct(scene);
        const auto maps = compute_all_maps(channel_images(echo, scene.region), frequency_images(echo, scene.region));
        const std::size_t target = scene.region.index(4, 4);
        for (MapKind k : kAllMapKinds)
            CHECK_THAT(maps.get(k)[target], WithinAbs(1.0, 1e-9));
    }
}

TEST_CASE("clamp_unit - clamps within slack and flags larger violations")
{
    CHECK(clamp_unit(1.0 + 0.5e-12) == 1.0);
    CHECK(clamp_unit(-0.5e-12) == 0.0);
    CHECK(clamp_unit(0.25) == 0.25);
    CHECK_THROWS_AS(clamp_unit(1.0 + 1e-9), ConsistencyError);
    CHECK_THROWS_AS(clamp_unit(-1e-9), ConsistencyError);
    CHECK_THROWS_AS(clamp_unit(std::nan("")), ConsistencyError);
}

TEST_CASE("CoherenceMap - rejects bad sizes and out-of-range values")
{
    CHECK_THROWS_AS(CoherenceMap(kOnePixel, MapKind::cf, {0.5, 0.5}), InputError);
    CHECK_THROWS_AS(CoherenceMap(kOnePixel, MapKind::cf, {1.5}), InputError);
    CHECK_THROWS_AS(CoherenceMap(kOnePixel, MapKind::cf, {-0.1}), InputError);
}

TEST_CASE("MapKind - names round-trip")
{
    for (MapKind k : kAllMapKinds)
        CHECK(parse_map_kind(to_string(k)) == k);
    CHECK_FALSE(parse_map_kind("cf3d").has_value());
}
