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

#include "cfimage/scene_file.hpp"

#include "cfimage/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace cfimage
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return std::string(s.substr(b, e - b + 1));
        }

        double to_number(const std::string &text, std::size_t line)
        {
            double v = 0.0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw ConfigError("expected a number, got '" + text + "'", line);
            return v;
        }

        std::size_t to_count(const std::string &text, std::size_t line)
        {
            std::size_t v = 0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
            if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw ConfigError("expected a non-negative integer, got '" + text + "'", line);
            return v;
        }

        std::vector<std::string> split_list(const std::string &value)
        {
            std::vector<std::string> parts;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                parts.push_back(trim(item));
            return parts;
        }

        std::vector<double> numbers(const std::string &value, std::size_t min_count, std::size_t max_count,
                                    std::size_t line)
        {
            const auto parts = split_list(value);
            if (parts.size() < min_count || parts.size() > max_count)
                throw ConfigError("expected " + std::to_string(min_count) +
                                      (min_count == max_count ? "" : "-" + std::to_string(max_count)) +
                                      " comma-separated values",
                                  line);
            std::vector<double> out;
            for (const auto &p : parts)
                out.push_back(to_number(p, line));
            return out;
        }

        Position2D position(const std::string &value, std::size_t line)
        {
            const auto v = numbers(value, 2, 2, line);
            return {v[0], v[1]};
        }

        std::complex<double> complex_value(const std::string &value, std::size_t line)
        {
            const auto v = numbers(value, 2, 2, line);
            return {v[0], v[1]};
        }

        std::size_t arc_count(double v, std::size_t line)
        {
            if (!(v >= 1.0) || v != static_cast<double>(static_cast<std::size_t>(v)))
                throw ConfigError("element count must be a positive integer", line);
            return static_cast<std::size_t>(v);
        }

        std::vector<Position2D> arc(const std::string &value, std::size_t line)
        {
            const auto v = numbers(value, 3, 4, line);
            try
            {
                return arc_receiver_array(v[0], v[1], arc_count(v[2], line), v.size() > 3 ? v[3] : 90.0);
            }
            catch (const ConfigError &)
            {
                throw;
            }
            catch (const InputError &e)
            {
                throw ConfigError(e.what(), line);
            }
        }

        template <class Fn>
        auto at_line(std::size_t line, Fn &&fn)
        {
            try
            {
                return fn();
            }
            catch (const ConfigError &)
            {
                throw;
            }
            catch (const InputError &e)
            {
                throw ConfigError(e.what(), line);
            }
        }

        struct Entry
        {
            std::string value;
            std::size_t line;
        };

        // Keys of one section instance; single-valued keys may appear once.
        struct Section
        {
            std::string name;
            std::size_t line = 0;
            std::vector<std::pair<std::string, Entry>> keys; // file order

            bool contains(const std::string &key) const { return get(key).has_value(); }

            std::optional<Entry> get(const std::string &key) const
            {
                for (const auto &[k, e] : keys)
                    if (k == key)
                        return e;
                return std::nullopt;
            }

            Entry require(const std::string &key) const
            {
                auto e = get(key);
                if (!e)
                    throw ConfigError("section [" + name + "] is missing '" + key + "'", line);
                return *e;
            }
        };

        const std::map<std::string, std::vector<std::string>> kAllowedKeys{
            {"", {"wave_speed", "spreading"}},
            {"array", {"tx", "rx", "tx_arc", "rx_arc", "element", "turntable"}},
            {"frequencies", {"start", "step", "stop", "count"}},
            {"region", {"x_min", "x_max", "y_min", "y_max", "nx", "ny"}},
            {"scatterer", {"position", "reflectivity"}},
            {"multipath", {"first", "second", "coupling"}},
        };

        bool repeatable(const std::string &section, const std::string &key)
        {
            return section == "array" && (key == "tx" || key == "rx" || key == "tx_arc" || key == "rx_arc" ||
                                          key == "element");
        }

        std::vector<Section> tokenize(std::string_view text)
        {
            std::vector<Section> sections(1); // top-level pseudo-section
            std::istringstream is{std::string(text)};
            std::string raw;
            std::size_t line = 0;
            while (std::getline(is, raw))
            {
                ++line;
                const auto hash = raw.find('#');
                const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
                if (content.empty())
                    continue;

                if (content.front() == '[')
                {
                    if (content.back() != ']')
                        throw ConfigError("malformed section header '" + content + "'", line);
                    const std::string name = trim(content.substr(1, content.size() - 2));
                    if (!kAllowedKeys.contains(name) || name.empty())
                        throw ConfigError("unknown section [" + name + "]", line);
                    sections.push_back({name, line, {}});
                    continue;
                }

                const auto eq = content.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("expected 'key = value'", line);
                const std::string key = trim(content.substr(0, eq));
                const std::string value = trim(content.substr(eq + 1));
                Section &current = sections.back();
                const auto &allowed = kAllowedKeys.at(current.name);
                if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                    throw ConfigError("unknown key '" + key + "'" +
                                          (current.name.empty() ? std::string(" before any section")
                                                                : " in section [" + current.name + "]"),
                                      line);
                if (!repeatable(current.name, key) && current.contains(key))
                    throw ConfigError("duplicate key '" + key + "'", line);
                if (value.empty())
                    throw ConfigError("key '" + key + "' has no value", line);
                current.keys.emplace_back(key, Entry{value, line});
            }
            return sections;
        }

        ArrayGeometry build_array(const Section &s)
        {
            std::vector<Position2D> tx, rx, elements;
            std::optional<Entry> turntable;
            for (const auto &[key, entry] : s.keys)
            {
                if (key == "tx")
                    tx.push_back(position(entry.value, entry.line));
                else if (key == "rx")
                    rx.push_back(position(entry.value, entry.line));
                else if (key == "tx_arc")
                    for (auto p : arc(entry.value, entry.line))
                        tx.push_back(p);
                else if (key == "rx_arc")
                    for (auto p : arc(entry.value, entry.line))
                        rx.push_back(p);
                else if (key == "element")
                    elements.push_back(position(entry.value, entry.line));
                else if (key == "turntable")
                    turntable = entry;
            }
            const bool monostatic = turntable || !elements.empty();
            if (monostatic && (!tx.empty() || !rx.empty()))
                throw ConfigError("monostatic elements cannot be combined with tx/rx lists", s.line);
            if (turntable && !elements.empty())
                throw ConfigError("use either 'turntable' or 'element' entries, not both", s.line);

            return at_line(s.line, [&]
                           {
                if (turntable)
                {
                    const auto v = numbers(turntable->value, 3, 4, turntable->line);
                    return at_line(turntable->line, [&]
                                   { return turntable_geometry(v[0], v[1], arc_count(v[2], turntable->line),
                                                               v.size() > 3 ? v[3] : 90.0); });
                }
                if (!elements.empty())
                    return ArrayGeometry::monostatic(elements);
                return ArrayGeometry(tx, rx); });
        }

        FrequencyGrid build_frequencies(const Section &s, std::vector<std::string> &notes)
        {
            const auto start = s.require("start");
            const auto count = s.require("count");
            const auto step = s.get("step");
            const auto stop = s.get("stop");
            if (step.has_value() == stop.has_value())
                throw ConfigError("section [frequencies] needs exactly one of 'step' or 'stop'", s.line);
            const double f0 = to_number(start.value, start.line);
            const std::size_t n = to_count(count.value, count.line);
            if (stop)
            {
                notes.push_back("frequency step derived from an inclusive stop frequency: step = (stop - start) / (count - 1)");
                return at_line(stop->line, [&]
                               { return FrequencyGrid::inclusive(f0, to_number(stop->value, stop->line), n); });
            }
            return at_line(step->line, [&]
                           { return FrequencyGrid(f0, to_number(step->value, step->line), n); });
        }

        ImageRegion build_region(const Section &s)
        {
            auto num = [&](const char *key)
            {
                const auto e = s.require(key);
                return to_number(e.value, e.line);
            };
            auto cnt = [&](const char *key)
            {
                const auto e = s.require(key);
                return to_count(e.value, e.line);
            };
            const double x0 = num("x_min"), x1 = num("x_max"), y0 = num("y_min"), y1 = num("y_max");
            const std::size_t nx = cnt("nx"), ny = cnt("ny");
            return at_line(s.line, [&]
                           { return ImageRegion(x0, x1, y0, y1, nx, ny); });
        }
    }

    ParsedScene parse_scene_text(std::string_view text)
    {
        const auto sections = tokenize(text);

        double wave_speed = kSpeedOfLight;
        bool spreading = false;
        const Section &top = sections.front();
        if (auto e = top.get("wave_speed"))
        {
            wave_speed = to_number(e->value, e->line);
            if (!(wave_speed > 0.0))
                throw ConfigError("wave_speed must be positive", e->line);
        }
        if (auto e = top.get("spreading"))
        {
            if (e->value == "on")
                spreading = true;
            else if (e->value != "off")
                throw ConfigError("spreading must be 'on' or 'off'", e->line);
        }

        const Section *array = nullptr, *freqs = nullptr, *region = nullptr;
        std::vector<const Section *> scatterers, pairs;
        for (std::size_t i = 1; i < sections.size(); ++i)
        {
            const Section &s = sections[i];
            auto once = [&](const Section *&slot)
            {
                if (slot)
                    throw ConfigError("duplicate section [" + s.name + "]", s.line);
                slot = &s;
            };
            if (s.name == "array")
                once(array);
            else if (s.name == "frequencies")
                once(freqs);
            else if (s.name == "region")
                once(region);
            else if (s.name == "scatterer")
                scatterers.push_back(&s);
            else if (s.name == "multipath")
                pairs.push_back(&s);
        }
        if (!array)
            throw ConfigError("missing section [array]");
        if (!freqs)
            throw ConfigError("missing section [frequencies]");
        if (!region)
            throw ConfigError("missing section [region]");
        if (scatterers.empty())
            throw ConfigError("missing section [scatterer]: the scene needs at least one scatterer");

        std::vector<std::string> notes;
        std::vector<Scatterer> scene_scatterers;
        for (const Section *s : scatterers)
        {
            const auto pos = s->require("position");
            Scatterer sc{position(pos.value, pos.line), {1.0, 0.0}};
            if (auto r = s->get("reflectivity"))
                sc.reflectivity = complex_value(r->value, r->line);
            scene_scatterers.push_back(sc);
        }

        std::vector<MultipathPair> scene_pairs;
        for (const Section *s : pairs)
        {
            const auto first = s->require("first");
            const auto second = s->require("second");
            const auto coupling = s->require("coupling");
            MultipathPair mp{to_count(first.value, first.line), to_count(second.value, second.line),
                             complex_value(coupling.value, coupling.line)};
            if (mp.first >= scene_scatterers.size())
                throw ConfigError("multipath 'first' references scatterer " + std::to_string(mp.first) + " but only " +
                                      std::to_string(scene_scatterers.size()) + " are defined",
                                  first.line);
            if (mp.second >= scene_scatterers.size())
                throw ConfigError("multipath 'second' references scatterer " + std::to_string(mp.second) +
                                      " but only " + std::to_string(scene_scatterers.size()) + " are defined",
                                  second.line);
            if (mp.first == mp.second)
                throw ConfigError("multipath pair must reference two distinct scatterers", second.line);
            scene_pairs.push_back(mp);
        }

        ParsedScene parsed{
            .scene = SceneConfig{
                .scatterers = std::move(scene_scatterers),
                .multipath = std::move(scene_pairs),
                .geometry = build_array(*array),
                .frequencies = build_frequencies(*freqs, notes),
                .region = build_region(*region),
                .wave_speed = wave_speed,
                .spreading_loss = spreading,
            },
            .notes = {},
        };
        parsed.notes = std::move(notes);
        try
        {
            parsed.scene.validate();
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const InputError &e)
        {
            throw ConfigError(e.what());
        }
        return parsed;
    }

    ParsedScene parse_scene_config(const std::filesystem::path &path)
    {
        std::ifstream is(path);
        if (!is)
            throw InputError("cannot open scene file '" + path.string() + "'");
        std::ostringstream ss;
        ss << is.rdbuf();
        try
        {
            return parse_scene_text(ss.str());
        }
        catch (const ConfigError &e)
        {
            throw e.in_file(path.string());
        }
    }
}
