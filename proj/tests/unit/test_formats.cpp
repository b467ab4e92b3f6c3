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

#include "cfimage/errors.hpp"
#include "cfimage/formats.hpp"
#include "cfimage/presets.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace cfimage;
namespace fs = std::filesystem;

namespace
{
    bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

    bool same_bits(const std::vector<Complex> &a, const std::vector<Complex> &b)
    {
        if (a.size() != b.size())
            return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!same_bits(a[i].real(), b[i].real()) || !same_bits(a[i].imag(), b[i].imag()))
                return false;
        return true;
    }

    // Finite doubles drawn from the full bit space, plus awkward hand-picked values.
    std::vector<double> awkward_values(std::size_t count, std::uint64_t seed)
    {
        std::vector<double> v{0.0,
                              -0.0,
                              0.1,
                              -1.0 / 3.0,
                              std::numeric_limits<double>::denorm_min(),
                              -std::numeric_limits<double>::min(),
                              std::numeric_limits<double>::max(),
                              std::numeric_limits<double>::lowest(),
                              std::numbers::pi};
        std::mt19937_64 rng(seed);
        while (v.size() < count)
        {
            const double d = std::bit_cast<double>(rng());
            if (std::isfinite(d))
                v.push_back(d);
        }
        return v;
    }

    EchoData awkward_echo(const ArrayGeometry &g, const FrequencyGrid &f, double c)
    {
        EchoData echo(g, f, c);
        const auto v = awkward_values(2 * echo.samples().size(), 5);
        for (std::size_t i = 0; i < echo.samples().size(); ++i)
            echo.samples()[i] = {v[2 * i], v[2 * i + 1]};
        return echo;
    }

    std::string bytes(const fs::path &p)
    {
        std::ifstream is(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(is), {}};
    }

    struct TempDir
    {
        fs::path path;
        TempDir() : path(fs::temp_directory_path() / ("cfimage_formats_" + std::to_string(std::random_device{}())))
        {
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
    };
}

// ================================================================================================
// Numbers
// ================================================================================================

TEST_CASE("format_exact - shortest text parses back to the identical double")
{
    for (double v : awkward_values(2000, 17))
        CHECK(same_bits(parse_exact(format_exact(v)), v));
    CHECK(format_exact(0.1) == "0.1");
    CHECK_THROWS_AS(parse_exact("1.0x"), InputError);
    CHECK_THROWS_AS(parse_exact(""), InputError);
}

// ================================================================================================
// .echo
// ================================================================================================

TEST_CASE(".echo - full-geometry round-trip is bit-exact")
{
    const ArrayGeometry g(arc_receiver_array(10.0, 4.0, 2), arc_receiver_array(10.0, 8.0, 5));
    const auto echo = awkward_echo(g, FrequencyGrid(8e9, 1e9 / 63.0, 7), 299792458.0);
    std::stringstream ss;
    write_echo(ss, echo);
    const auto back = read_echo(ss);
    CHECK(back.geometry() == echo.geometry());
    CHECK(back.frequencies() == echo.frequencies());
    CHECK(same_bits(back.wave_speed(), echo.wave_speed()));
    CHECK(same_bits(back.samples(), echo.samples()));

    std::stringstream again;
    write_echo(again, back);
    std::stringstream first;
    write_echo(first, echo);
    CHECK(again.str() == first.str());
}

TEST_CASE(".echo - monostatic round-trip keeps the channel mode")
{
    const auto echo = awkward_echo(turntable_geometry(10.0, 8.0, 9), FrequencyGrid(8e9, 3e7, 3), 3e8);
    std::stringstream ss;
    write_echo(ss, echo);
    const auto back = read_echo(ss);
    CHECK(back.geometry().mode() == ChannelMode::monostatic);
    CHECK(back.channel_count() == 9);
    CHECK(same_bits(back.samples(), echo.samples()));
}

TEST_CASE(".echo - header starts with the magic line")
{
    const auto echo = simulate_direct(presets::ghost_scene(4));
    std::stringstream ss;
    write_echo(ss, echo);
    CHECK(ss.str().rfind("RCE1\n", 0) == 0);
}

TEST_CASE(".echo - rejects malformed input")
{
    const auto echo = simulate_direct(presets::ghost_scene(4));
    std::stringstream ss;
    write_echo(ss, echo);
    const std::string good = ss.str();

    auto expect_error = [](const std::string &text)
    {
        std::stringstream is(text);
        CHECK_THROWS_AS(read_echo(is), InputError);
    };
    expect_error("RCE2" + good.substr(4));
    expect_error(good.substr(0, good.size() - 3));
    expect_error(good + "x");
    expect_error(good.substr(0, good.find('\n') + 1));
    std::string bad_mode = good;
    bad_mode.replace(bad_mode.find("full"), 4, "half");
    expect_error(bad_mode);
}

// ================================================================================================
// .img
// ================================================================================================

TEST_CASE(".img - complex image round-trip is bit-exact")
{
    const ImageRegion r(-1.505859375, 1.494140625, -0.1, 0.7, 5, 3);
    const auto v = awkward_values(2 * r.pixel_count(), 9);
    std::vector<Complex> px(r.pixel_count());
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = {v[2 * i], v[2 * i + 1]};
    const ImageGrid image(r, px);

    TempDir dir;
    const auto path = dir.path / "a.img";
    save_image(path, image);
    const auto back = load_image(path);
    CHECK(back.region() == image.region());
    CHECK(same_bits(back.pixels(), image.pixels()));
    CHECK(bytes(path).rfind("RCI1\n", 0) == 0);

    save_image(dir.path / "b.img", back);
    CHECK(bytes(path) == bytes(dir.path / "b.img"));
}

TEST_CASE(".img - coherence map round-trip keeps kind and values")
{
    const ImageRegion r(0, 1, 0, 2, 4, 3);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values(r.pixel_count());
    for (auto &x : values)
        x = u(rng);
    values[0] = 0.0;
    values[1] = 1.0;

    TempDir dir;
    for (MapKind k : kAllMapKinds)
    {
        const CoherenceMap map(r, k, values);
        const auto path = dir.path / "m.img";
        save_map(path, map);
        const auto back = load_map(path);
        CHECK(back.kind() == k);
        CHECK(back.region() == r);
        for (std::size_t i = 0; i < values.size(); ++i)
            CHECK(same_bits(back[i], values[i]));
        CHECK_THROWS_AS(load_image(path), InputError);
    }
    save_image(dir.path / "c.img", ImageGrid(r));
    CHECK_THROWS_AS(load_map(dir.path / "c.img"), InputError);
}

TEST_CASE(".img - rejects malformed input")
{
    const ImageRegion r(0, 1, 0, 1, 2, 2);
    std::stringstream ss;
    write_image_file(ss, ImageFile{r, true, std::nullopt, std::vector<double>(8, 1.0)});
    const std::string good = ss.str();
    {
        std::stringstream is(good);
        CHECK(read_image_file(is).payload.size() == 8);
    }
    for (const std::string &text : {"RCE1" + good.substr(4), good.substr(0, good.size() - 1), good + "\x01"})
    {
        std::stringstream is(text);
        CHECK_THROWS_AS(read_image_file(is), InputError);
    }
    std::stringstream out;
    CHECK_THROWS_AS(write_image_file(out, ImageFile{r, true, std::nullopt, std::vector<double>(7, 1.0)}), InputError);
    CHECK_THROWS_AS(load_image("/nonexistent/dir/x.img"), InputError);
}

// ================================================================================================
// Graymap export
// ================================================================================================

TEST_CASE("db_graymap - constant image is all 255")
{
    const ImageRegion r(0, 1, 0, 1, 3, 2);
    const auto gray = db_graymap(ImageGrid(r, std::vector<Complex>(6, {0.0, 2.0})), -40.0);
    REQUIRE(gray.size() == 6);
    for (auto g : gray)
        CHECK(g == 255);
}

TEST_CASE("db_graymap - floor maps to 0, midpoint to 127 or 128")
{
    const ImageRegion r(0, 3, 0, 1, 3, 1);
    const ImageGrid img(r, {{1.0, 0.0}, {0.1, 0.0}, {0.01, 0.0}});
    const auto gray = db_graymap(img, -40.0);
    CHECK(gray[0] == 255);
    CHECK((gray[1] == 127 || gray[1] == 128));
    CHECK(gray[2] == 0);
}

TEST_CASE("db_graymap - rounds half away from zero and clips below the floor")
{
    // -40 * (1 - 127.5 / 255) = -20 dB lands exactly on a half step.
    const double half = std::pow(10.0, -1.0);
    const ImageRegion r(0, 3, 0, 1, 3, 1);
    const ImageGrid img(r, {{1.0, 0.0}, {half, 0.0}, {1e-6, 0.0}});
    const auto gray = db_graymap(img, -40.0);
    const double scaled = 255.0 * (20.0 * std::log10(half) + 40.0) / 40.0;
    CHECK(gray[1] == static_cast<std::uint8_t>(std::round(scaled)));
    CHECK(gray[2] == 0);
}

TEST_CASE("db_graymap - top row is y_max")
{
    const ImageRegion r(0, 1, 0, 2, 1, 2);
    ImageGrid img(r);
    img.at(0, 1) = 1.0; // upper pixel
    img.at(0, 0) = 1e-3;
    const auto gray = db_graymap(img, -20.0);
    CHECK(gray[0] == 255);
    CHECK(gray[1] == 0);
}

TEST_CASE("db_graymap - rejects non-negative floors and zero images")
{
    const ImageRegion r(0, 1, 0, 1, 2, 2);
    ImageGrid img(r);
    CHECK_THROWS_AS(db_graymap(img, -40.0), InputError);
    img[0] = 1.0;
    CHECK_THROWS_AS(db_graymap(img, 0.0), InputError);
    CHECK_THROWS_AS(db_graymap(img, 3.0), InputError);
}

TEST_CASE("export_db_image - writes a binary PGM")
{
    const ImageRegion r(0, 1, 0, 1, 4, 3);
    ImageGrid img(r, std::vector<Complex>(12, {1.0, 0.0}));
    TempDir dir;
    export_db_image(img, -30.0, dir.path / "x.pgm");
    const auto data = bytes(dir.path / "x.pgm");
    CHECK(data.rfind("P5\n4 3\n255\n", 0) == 0);
    CHECK(data.size() == std::string("P5\n4 3\n255\n").size() + 12);
}
