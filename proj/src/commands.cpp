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

#include "cfimage/commands.hpp"

#include "cfimage/backprojection.hpp"
#include "cfimage/errors.hpp"
#include "cfimage/formats.hpp"
#include "cfimage/manifest.hpp"
#include "cfimage/metrics.hpp"
#include "cfimage/scene_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cfimage
{
    namespace fs = std::filesystem;

    ImageRegion parse_region_spec(const std::string &spec)
    {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ','))
            parts.push_back(item);
        if (parts.size() != 6)
            throw InputError("--region expects x0,x1,y0,y1,nx,ny");
        const double x0 = parse_exact(parts[0]), x1 = parse_exact(parts[1]);
        const double y0 = parse_exact(parts[2]), y1 = parse_exact(parts[3]);
        const double nx = parse_exact(parts[4]), ny = parse_exact(parts[5]);
        if (!(nx >= 1.0 && ny >= 1.0) || nx != std::floor(nx) || ny != std::floor(ny))
            throw InputError("--region pixel counts must be positive integers");
        return ImageRegion(x0, x1, y0, y1, static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
    }

    namespace
    {
        template <class Fn>
        int guarded(std::ostream &err, Fn &&fn)
        {
            try
            {
                fn();
                return kExitOk;
            }
            catch (const ConsistencyError &e)
            {
                err << "internal consistency failure: " << e.what() << '\n';
                return kExitInternalError;
            }
            catch (const std::exception &e)
            {
                err << "error: " << e.what() << '\n';
                return kExitInputError;
            }
        }

        std::string num(double v)
        {
            if (std::isinf(v))
                return v < 0 ? "-inf" : "inf";
            return format_exact(v);
        }

        std::string fixed(double v, int decimals = 2)
        {
            if (std::isinf(v))
                return v < 0 ? "-inf" : "inf";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
            return buf;
        }

        std::string scientific(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", v);
            return buf;
        }

        std::string region_text(const ImageRegion &r)
        {
            return num(r.x_min()) + "," + num(r.x_max()) + "," + num(r.y_min()) + "," + num(r.y_max()) + "," +
                   std::to_string(r.nx()) + "," + std::to_string(r.ny());
        }

        void record_imaging(RunManifest &m, const ImagingOptions &o, const ImageRegion &region)
        {
            m.add_parameter("region", region_text(region));
            m.add_parameter("fast_bp", o.fast_bp ? "on" : "off");
            if (o.fast_bp)
                m.add_parameter("upsample", std::to_string(o.upsample));
            m.add_parameter("spectral_weight", o.f_weighted ? "frequency" : "uniform");
        }

        BackprojectionOptions bp_options(const ImagingOptions &o)
        {
            return {o.f_weighted ? SpectralWeighting::frequency : SpectralWeighting::uniform, o.threads};
        }

        SpectralWeighting weighting(const ImagingOptions &o)
        {
            return o.f_weighted ? SpectralWeighting::frequency : SpectralWeighting::uniform;
        }

        ChannelImageStack channel_stack(const EchoData &echo, const ImageRegion &region, const ImagingOptions &o)
        {
            if (o.fast_bp)
                return fast_range_profiles(echo, region, o.upsample, bp_options(o));
            return channel_images(echo, region, bp_options(o));
        }

        ImageRegion imaging_region(const ImagingOptions &o, const std::optional<fs::path> &scene,
                                   RunManifest &manifest)
        {
            if (o.region)
                return *o.region;
            if (!scene)
                throw InputError("an imaging region is required: pass --region or --scene");
            manifest.add_input(*scene);
            return parse_scene_config(*scene).scene.region;
        }

        fs::path manifest_path_for(const fs::path &output) { return fs::path(output.string() + ".manifest"); }

        fs::path with_pgm(const fs::path &p)
        {
            auto q = p;
            q.replace_extension(".pgm");
            return q;
        }

        std::vector<Position2D> target_positions(const SceneConfig &scene)
        {
            std::vector<Position2D> out;
            for (const auto &s : scene.scatterers)
                out.push_back(s.position);
            return out;
        }

        void ensure_directory(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec || !fs::is_directory(dir))
                throw InputError("cannot create output directory '" + dir.string() + "'");
        }

        CoherenceMap load_or_compose_map(const fs::path &dir, MapKind kind)
        {
            const fs::path direct = dir / (std::string(to_string(kind)) + ".img");
            if (fs::exists(direct))
                return load_map(direct);
            if (kind == MapKind::cf2d)
                return cf_2d(load_map(dir / "cf.img"), load_map(dir / "cff.img"));
            if (kind == MapKind::pcf2d)
                return pcf_2d(load_map(dir / "pcf.img"), load_map(dir / "pcff.img"));
            throw InputError("map file '" + direct.string() + "' not found");
        }
    }

    // ---------------------------------------------------------------- simulate

    int run_simulate(const SimulateArgs &args, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            RunManifest manifest;
            manifest.subcommand = "simulate";
            manifest.add_input(args.scene);
            auto parsed = parse_scene_config(args.scene);
            manifest.notes = parsed.notes;
            manifest.add_parameter("snr_db", num(args.snr_db));
            manifest.add_parameter("seed", std::to_string(args.seed));

            EchoData echo = add_noise(simulate_with_multipath(parsed.scene), args.snr_db, args.seed);
            save_echo(args.out, echo);
            manifest.outputs.push_back(args.out.string());
            manifest.write(manifest_path_for(args.out));
            out << "wrote " << args.out.string() << " (" << echo.channel_count() << " channels x "
                << echo.frequency_count() << " frequencies)\n"; });
    }

    // ---------------------------------------------------------------- image

    int run_image(const ImageArgs &args, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            RunManifest manifest;
            manifest.subcommand = "image";
            manifest.add_input(args.echo);
            const ImageRegion region = imaging_region(args.imaging, args.scene, manifest);
            record_imaging(manifest, args.imaging, region);

            const EchoData echo = load_echo(args.echo);
            const ImageGrid image = image_from_channels(channel_stack(echo, region, args.imaging));
            save_image(args.out, image);
            manifest.outputs.push_back(args.out.string());
            if (args.floor_db)
            {
                export_db_image(image, *args.floor_db, with_pgm(args.out));
                manifest.add_parameter("floor_db", num(*args.floor_db));
                manifest.outputs.push_back(with_pgm(args.out).string());
            }
            manifest.write(manifest_path_for(args.out));
            out << "wrote " << args.out.string() << '\n'; });
    }

    // ---------------------------------------------------------------- enhance

    int run_enhance(const EnhanceArgs &args, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            RunManifest manifest;
            manifest.subcommand = "enhance";
            manifest.add_parameter("map", std::string(to_string(args.map)));

            std::optional<ImageGrid> enhanced;
            if (args.echo)
            {
                if (args.image || args.maps_dir)
                    throw InputError("enhance takes either --echo or --image with --maps, not both");
                manifest.add_input(*args.echo);
                const ImageRegion region = imaging_region(args.imaging, args.scene, manifest);
                record_imaging(manifest, args.imaging, region);
                const EchoData echo = load_echo(*args.echo);
                const auto channels = channel_stack(echo, region, args.imaging);
                const auto freqs = frequency_images(echo, region, bp_options(args.imaging));
                const auto maps = compute_all_maps(channels, freqs);
                enhanced = apply_map(image_from_channels(channels), maps.get(args.map));
            }
            else
            {
                if (!args.image || !args.maps_dir)
                    throw InputError("enhance needs --echo, or --image together with --maps");
                manifest.add_input(*args.image);
                const ImageGrid image = load_image(*args.image);
                const CoherenceMap map = load_or_compose_map(*args.maps_dir, args.map);
                for (MapKind k : kAllMapKinds)
                {
                    const fs::path p = *args.maps_dir / (std::string(to_string(k)) + ".img");
                    if (fs::exists(p))
                        manifest.add_input(p);
                }
                enhanced = apply_map(image, map);
            }

            save_image(args.out, *enhanced);
            manifest.outputs.push_back(args.out.string());
            if (args.floor_db)
            {
                export_db_image(*enhanced, *args.floor_db, with_pgm(args.out));
                manifest.add_parameter("floor_db", num(*args.floor_db));
                manifest.outputs.push_back(with_pgm(args.out).string());
            }
            manifest.write(manifest_path_for(args.out));
            out << "wrote " << args.out.string() << '\n'; });
    }

    // ---------------------------------------------------------------- metrics

    int run_metrics(const MetricsArgs &args, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            const auto parsed = parse_scene_config(args.scene);
            const auto targets = target_positions(parsed.scene);
            const double radius = args.exclusion_radius.value_or(
                default_exclusion_radius(parsed.scene.frequencies, parsed.scene.wave_speed));

            const ImageGrid image = load_image(args.image);
            const QualityReport report = quality_report(image, targets, radius, args.ghost_floor_db);
            std::string text = format_report("image", report);

            if (args.reference)
            {
                const ImageGrid reference = load_image(*args.reference);
                const auto ghosts = ghost_level(reference, targets, radius, args.ghost_floor_db);
                if (ghosts.empty())
                    text += "suppression: no ghost found in the reference image\n";
                else
                {
                    const double delta = suppression_delta(reference, image, ghosts.front().position);
                    text += "suppression_delta_db=" + fixed(delta, 4) + "\n";
                }
            }

            out << text;
            if (args.out)
            {
                std::ofstream os(*args.out, std::ios::binary | std::ios::trunc);
                if (!os)
                    throw InputError("cannot write '" + args.out->string() + "'");
                os << text;
            } });
    }

    // ---------------------------------------------------------------- pipeline

    int run_pipeline(const PipelineArgs &args, std::ostream &out, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            RunManifest manifest;
            manifest.subcommand = "pipeline";
            manifest.add_input(args.scene);
            const auto parsed = parse_scene_config(args.scene);
            const SceneConfig &scene = parsed.scene;
            manifest.notes = parsed.notes;
            const ImageRegion region = args.imaging.region.value_or(scene.region);
            record_imaging(manifest, args.imaging, region);
            manifest.add_parameter("snr_db", num(args.snr_db));
            manifest.add_parameter("seed", std::to_string(args.seed));
            const double radius =
                args.exclusion_radius.value_or(default_exclusion_radius(scene.frequencies, scene.wave_speed));
            manifest.add_parameter("exclusion_radius", num(radius));
            manifest.add_parameter("ghost_floor_db", num(args.ghost_floor_db));
            ensure_directory(args.out_dir);

            const EchoData echo = add_noise(simulate_with_multipath(scene), args.snr_db, args.seed);
            const auto channels = channel_stack(echo, region, args.imaging);
            const auto freqs = frequency_images(echo, region, bp_options(args.imaging));
            const ImageGrid bp = image_from_channels(channels);
            const double ordering_gap = relative_linf(bp.pixels(), image_from_frequencies(freqs, weighting(args.imaging)).pixels());
            const auto maps = compute_all_maps(channels, freqs);

            auto emit_image = [&](const std::string &name, const ImageGrid &img)
            {
                save_image(args.out_dir / (name + ".img"), img);
                manifest.outputs.push_back(name + ".img");
                if (args.floor_db)
                {
                    export_db_image(img, *args.floor_db, args.out_dir / (name + ".pgm"));
                    manifest.outputs.push_back(name + ".pgm");
                }
            };

            emit_image("bp", bp);
            std::vector<std::pair<MapKind, ImageGrid>> enhanced;
            for (MapKind k : kAllMapKinds)
            {
                const std::string name(to_string(k));
                save_map(args.out_dir / (name + ".img"), maps.get(k));
                manifest.outputs.push_back(name + ".img");
                enhanced.emplace_back(k, apply_map(bp, maps.get(k)));
                emit_image("bp_" + name, enhanced.back().second);
            }
            if (args.floor_db)
                manifest.add_parameter("floor_db", num(*args.floor_db));

            // Report
            const auto targets = target_positions(scene);
            std::ostringstream report;
            report << "# " << kToolVersion << " pipeline report\n"
                   << "scene=" << args.scene.string() << '\n'
                   << "channels=" << echo.channel_count() << '\n'
                   << "frequencies=" << echo.frequency_count() << '\n'
                   << "exclusion_radius_m=" << fixed(radius, 6) << '\n'
                   << "ordering_relative_linf=" << (args.imaging.fast_bp ? std::string("n/a") : scientific(ordering_gap)) << '\n';
            const QualityReport bp_report = quality_report(bp, targets, radius, args.ghost_floor_db);
            report << format_report("bp", bp_report);
            for (const auto &[k, img] : enhanced)
                report << format_report("bp_" + std::string(to_string(k)), quality_report(img, targets, radius, args.ghost_floor_db));

            if (bp_report.ghost_levels.empty())
                report << "== suppression\n  no ghost above the floor in the BP image\n";
            else
            {
                const Position2D ghost = bp_report.ghost_levels.front().position;
                const auto image_of = [&](MapKind k) -> const ImageGrid &
                {
                    for (const auto &[kind, img] : enhanced)
                        if (kind == k)
                            return img;
                    throw ConsistencyError("missing enhanced image");
                };
                report << "== suppression at strongest BP ghost (" << fixed(ghost.x, 4) << ", " << fixed(ghost.y, 4) << ") m\n";
                for (MapKind k : kAllMapKinds)
                    report << "suppression.bp_to_" << to_string(k) << "_db=" << fixed(suppression_delta(bp, image_of(k), ghost), 4) << '\n';
                report << "suppression.cf_to_cf2d_db=" << fixed(suppression_delta(image_of(MapKind::cf), image_of(MapKind::cf2d), ghost), 4) << '\n'
                       << "suppression.pcf_to_pcf2d_db=" << fixed(suppression_delta(image_of(MapKind::pcf), image_of(MapKind::pcf2d), ghost), 4) << '\n';
            }

            {
                std::ofstream os(args.out_dir / "report.txt", std::ios::binary | std::ios::trunc);
                if (!os)
                    throw InputError("cannot write report.txt");
                os << report.str();
            }
            manifest.outputs.push_back("report.txt");
            manifest.write(args.out_dir / "manifest.txt");
            out << report.str(); });
    }

    int run_export(const fs::path &image, double floor_db, const fs::path &output, std::ostream &err)
    {
        return guarded(err, [&]
                       {
            RunManifest manifest;
            manifest.subcommand = "export";
            manifest.add_input(image);
            manifest.add_parameter("floor_db", num(floor_db));
            export_db_image(load_image(image), floor_db, output);
            manifest.outputs.push_back(output.string());
            manifest.write(manifest_path_for(output)); });
    }
}
