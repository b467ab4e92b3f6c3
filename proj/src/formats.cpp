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

#include "cfimage/formats.hpp"

#include "cfimage/errors.hpp"
#include "cfimage/metrics.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace cfimage
{
    std::string format_exact(double value)
    {
        std::array<char, 64> buf{};
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
        return std::string(buf.data(), res.ptr);
    }

    double parse_exact(std::string_view text)
    {
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw InputError("malformed number '" + std::string(text) + "'");
        return value;
    }

    namespace
    {
        constexpr std::string_view kEchoMagic = "RCE1";
        constexpr std::string_view kImageMagic = "RCI1";

        void put_f64(std::ostream &os, double v)
        {
            auto bits = std::bit_cast<std::uint64_t>(v);
            std::array<char, 8> bytes{};
            for (auto &b : bytes)
            {
                b = static_cast<char>(bits & 0xffu);
                bits >>= 8;
            }
            os.write(bytes.data(), bytes.size());
        }

        double get_f64(std::istream &is)
        {
            std::array<unsigned char, 8> bytes{};
            if (!is.read(reinterpret_cast<char *>(bytes.data()), bytes.size()))
                throw InputError("truncated binary payload");
            std::uint64_t bits = 0;
            for (std::size_t i = 8; i-- > 0;)
                bits = (bits << 8) | bytes[i];
            return std::bit_cast<double>(bits);
        }

        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        struct HeaderLine
        {
            std::string key;
            std::string value;
        };

        // Reads magic plus `key = value` lines up to the blank separator line.
        std::vector<HeaderLine> read_header(std::istream &is, std::string_view magic)
        {
            std::string line;
            if (!std::getline(is, line) || line != magic)
                throw InputError("bad magic: expected " + std::string(magic));
            std::vector<HeaderLine> header;
            while (true)
            {
                if (!std::getline(is, line))
                    throw InputError("truncated header");
                if (line.empty())
                    break;
                const auto eq = line.find('=');
                if (eq == std::string::npos)
                    throw InputError("malformed header line '" + line + "'");
                header.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
            }
            return header;
        }

        std::size_t parse_count(const std::string &text)
        {
            std::size_t v = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw InputError("malformed count '" + text + "'");
            return v;
        }

        Position2D parse_position(const std::string &text)
        {
            const auto sp = text.find(' ');
            if (sp == std::string::npos)
                throw InputError("malformed position '" + text + "'");
            return {parse_exact(trim(text.substr(0, sp))), parse_exact(trim(text.substr(sp + 1)))};
        }

        const std::string &require(const std::map<std::string, std::string> &kv, const std::string &key)
        {
            const auto it = kv.find(key);
            if (it == kv.end())
                throw InputError("header is missing '" + key + "'");
            return it->second;
        }

        void expect_end(std::istream &is)
        {
            if (is.peek() != std::char_traits<char>::eof())
                throw InputError("trailing bytes after payload");
        }

        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream os(path, std::ios::binary | std::ios::trunc);
            if (!os)
                throw InputError("cannot open '" + path.string() + "' for writing");
            return os;
        }

        std::ifstream open_in(const std::filesystem::path &path)
        {
            std::ifstream is(path, std::ios::binary);
            if (!is)
                throw InputError("cannot open '" + path.string() + "'");
            return is;
        }
    }

    // ---------------------------------------------------------------- .echo

    void write_echo(std::ostream &os, const EchoData &echo)
    {
        const auto &g = echo.geometry();
        os << kEchoMagic << '\n'
           << "mode = " << (g.mode() == ChannelMode::monostatic ? "monostatic" : "full") << '\n'
           << "transmitters = " << g.transmitters().size() << '\n'
           << "receivers = " << g.receivers().size() << '\n'
           << "frequencies = " << echo.frequency_count() << '\n'
           << "f0 = " << format_exact(echo.frequencies().start()) << '\n'
           << "delta_f = " << format_exact(echo.frequencies().step()) << '\n'
           << "wave_speed = " << format_exact(echo.wave_speed()) << '\n';
        for (const auto &p : g.transmitters())
            os << "tx = " << format_exact(p.x) << ' ' << format_exact(p.y) << '\n';
        for (const auto &p : g.receivers())
            os << "rx = " << format_exact(p.x) << ' ' << format_exact(p.y) << '\n';
        os << '\n';
        for (const auto &s : echo.samples())
        {
            put_f64(os, s.real());
            put_f64(os, s.imag());
        }
        if (!os)
            throw InputError("failed writing echo data");
    }

    EchoData read_echo(std::istream &is)
    {
        const auto header = read_header(is, kEchoMagic);
        std::map<std::string, std::string> kv;
        std::vector<Position2D> tx, rx;
        for (const auto &h : header)
        {
            if (h.key == "tx")
                tx.push_back(parse_position(h.value));
            else if (h.key == "rx")
                rx.push_back(parse_position(h.value));
            else if (!kv.emplace(h.key, h.value).second)
                throw InputError("duplicate header key '" + h.key + "'");
        }

        const std::string &mode = require(kv, "mode");
        if (tx.size() != parse_count(require(kv, "transmitters")) || rx.size() != parse_count(require(kv, "receivers")))
            throw InputError("element count does not match the listed positions");
        const std::size_t nfreq = parse_count(require(kv, "frequencies"));
        const FrequencyGrid grid(parse_exact(require(kv, "f0")), parse_exact(require(kv, "delta_f")), nfreq);
        const double c = parse_exact(require(kv, "wave_speed"));

        ArrayGeometry geometry = [&]
        {
            if (mode == "monostatic")
            {
                if (tx != rx)
                    throw InputError("monostatic echo lists different tx and rx positions");
                return ArrayGeometry::monostatic(tx);
            }
            if (mode == "full")
                return ArrayGeometry(tx, rx);
            throw InputError("unknown channel mode '" + mode + "'");
        }();

        std::vector<std::complex<double>> samples(geometry.channel_count() * nfreq);
        for (auto &s : samples)
        {
            const double re = get_f64(is);
            const double im = get_f64(is);
            s = {re, im};
        }
        expect_end(is);
        return EchoData(std::move(geometry), grid, c, std::move(samples));
    }

    void save_echo(const std::filesystem::path &path, const EchoData &echo)
    {
        auto os = open_out(path);
        write_echo(os, echo);
    }

    EchoData load_echo(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        return read_echo(is);
    }

    // ---------------------------------------------------------------- .img

    void write_image_file(std::ostream &os, const ImageFile &file)
    {
        const std::size_t expected = file.region.pixel_count() * (file.complex_payload ? 2 : 1);
        if (file.payload.size() != expected)
            throw InputError("image payload size does not match its region");
        const auto &r = file.region;
        os << kImageMagic << '\n'
           << "payload = " << (file.complex_payload ? "complex" : "real") << '\n'
           << "kind = " << (file.kind ? to_string(*file.kind) : std::string_view("image")) << '\n'
           << "x_min = " << format_exact(r.x_min()) << '\n'
           << "x_max = " << format_exact(r.x_max()) << '\n'
           << "y_min = " << format_exact(r.y_min()) << '\n'
           << "y_max = " << format_exact(r.y_max()) << '\n'
           << "nx = " << r.nx() << '\n'
           << "ny = " << r.ny() << '\n'
           << '\n';
        for (double v : file.payload)
            put_f64(os, v);
        if (!os)
            throw InputError("failed writing image data");
    }

    ImageFile read_image_file(std::istream &is)
    {
        std::map<std::string, std::string> kv;
        for (const auto &h : read_header(is, kImageMagic))
            if (!kv.emplace(h.key, h.value).second)
                throw InputError("duplicate header key '" + h.key + "'");

        const std::string &payload = require(kv, "payload");
        if (payload != "complex" && payload != "real")
            throw InputError("unknown payload type '" + payload + "'");
        const std::string &kind = require(kv, "kind");
        std::optional<MapKind> map_kind;
        if (kind != "image")
        {
            map_kind = parse_map_kind(kind);
            if (!map_kind)
                throw InputError("unknown image kind '" + kind + "'");
        }

        ImageFile file{
            .region = ImageRegion(parse_exact(require(kv, "x_min")), parse_exact(require(kv, "x_max")),
                                  parse_exact(require(kv, "y_min")), parse_exact(require(kv, "y_max")),
                                  parse_count(require(kv, "nx")), parse_count(require(kv, "ny"))),
            .complex_payload = payload == "complex",
            .kind = map_kind,
            .payload = {},
        };
        file.payload.resize(file.region.pixel_count() * (file.complex_payload ? 2 : 1));
        for (auto &v : file.payload)
            v = get_f64(is);
        expect_end(is);
        return file;
    }

    void save_image(const std::filesystem::path &path, const ImageGrid &image)
    {
        ImageFile file{.region = image.region(), .complex_payload = true, .kind = std::nullopt, .payload = {}};
        file.payload.reserve(2 * image.size());
        for (const auto &p : image.pixels())
        {
            file.payload.push_back(p.real());
            file.payload.push_back(p.imag());
        }
        auto os = open_out(path);
        write_image_file(os, file);
    }

    ImageGrid load_image(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        const ImageFile file = read_image_file(is);
        if (!file.complex_payload || file.kind)
            throw InputError("'" + path.string() + "' holds a coherence map, not a complex image");
        std::vector<Complex> pixels(file.region.pixel_count());
        for (std::size_t i = 0; i < pixels.size(); ++i)
            pixels[i] = {file.payload[2 * i], file.payload[2 * i + 1]};
        return ImageGrid(file.region, std::move(pixels));
    }

    void save_map(const std::filesystem::path &path, const CoherenceMap &map)
    {
        ImageFile file{.region = map.region(), .complex_payload = false, .kind = map.kind(), .payload = map.values()};
        auto os = open_out(path);
        write_image_file(os, file);
    }

    CoherenceMap load_map(const std::filesystem::path &path)
    {
        auto is = open_in(path);
        ImageFile file = read_image_file(is);
        if (file.complex_payload || !file.kind)
            throw InputError("'" + path.string() + "' holds a complex image, not a coherence map");
        for (double v : file.payload)
            if (!(v >= 0.0 && v <= 1.0))
                throw InputError("coherence map value outside [0, 1]");
        return CoherenceMap(file.region, *file.kind, std::move(file.payload));
    }

    // ---------------------------------------------------------------- graymap export

    std::vector<std::uint8_t> db_graymap(const ImageGrid &image, double floor_db)
    {
        if (!(floor_db < 0.0))
            throw InputError("graymap floor must be negative dB");
        const double peak = image.peak_magnitude();
        if (peak <= 0.0)
            throw InputError("cannot export an all-zero image");

        const auto &r = image.region();
        std::vector<std::uint8_t> gray;
        gray.reserve(image.size());
        for (std::size_t row = 0; row < r.ny(); ++row)
        {
            const std::size_t l = r.ny() - 1 - row;
            for (std::size_t k = 0; k < r.nx(); ++k)
            {
                const double db = magnitude_db(std::abs(image.at(k, l)), peak);
                const double scaled = std::clamp(255.0 * (db - floor_db) / (0.0 - floor_db), 0.0, 255.0);
                gray.push_back(static_cast<std::uint8_t>(std::round(scaled)));
            }
        }
        return gray;
    }

    void export_db_image(const ImageGrid &image, double floor_db, const std::filesystem::path &path)
    {
        const auto gray = db_graymap(image, floor_db);
        auto os = open_out(path);
        os << "P5\n" << image.region().nx() << ' ' << image.region().ny() << "\n255\n";
        os.write(reinterpret_cast<const char *>(gray.data()), static_cast<std::streamsize>(gray.size()));
        if (!os)
            throw InputError("failed writing graymap");
    }
}
