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
#include "cfimage/errors.hpp"
#include "cfimage/manifest.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace
{
    using namespace cfimage;

    struct ImagingFlags
    {
        std::string region;
        ImagingOptions options;
    };

    void add_imaging_flags(CLI::App *cmd, ImagingFlags &flags)
    {
        cmd->add_option("--region", flags.region, "Image region x0,x1,y0,y1,nx,ny (metres, pixels)");
        cmd->add_flag("--fast-bp", flags.options.fast_bp, "Use the FFT range-profile back-projection");
        cmd->add_option("--upsample", flags.options.upsample, "Fast-path zero-padding factor")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--f-weighted", flags.options.f_weighted, "Weight each frequency sample by f");
        cmd->add_option("--threads", flags.options.threads, "Worker threads (0 = hardware concurrency)");
    }

    ImagingOptions resolve(const ImagingFlags &flags)
    {
        ImagingOptions o = flags.options;
        if (!flags.region.empty())
            o.region = parse_region_spec(flags.region);
        return o;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Step-frequency array imaging with coherence-factor filtering"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // simulate
    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Synthesize echo data from a scene file");
    simulate->add_option("--scene", sim.scene, "Scene configuration")->required();
    simulate->add_option("--out", sim.out, "Output .echo file")->required();
    simulate->add_option("--snr-db", sim.snr_db, "Per-sample SNR in dB (omit for noise-free)");
    simulate->add_option("--seed", sim.seed, "Noise seed");

    // image
    ImageArgs img;
    ImagingFlags img_flags;
    std::string img_scene;
    double img_floor = 0.0;
    auto *image = app.add_subcommand("image", "Back-project echo data to a complex image");
    image->add_option("--echo", img.echo, "Input .echo file")->required();
    image->add_option("--scene", img_scene, "Scene file providing the region");
    image->add_option("--out", img.out, "Output .img file")->required();
    auto *img_floor_opt = image->add_option("--floor-db", img_floor, "Also export a dB graymap with this floor");
    add_imaging_flags(image, img_flags);

    // enhance
    EnhanceArgs enh;
    ImagingFlags enh_flags;
    std::string enh_map = "cf2d", enh_echo, enh_scene, enh_image, enh_maps;
    double enh_floor = 0.0;
    auto *enhance = app.add_subcommand("enhance", "Apply a coherence map to a back-projected image");
    enhance->add_option("--map", enh_map, "cf, cff, cf2d, pcf, pcff or pcf2d");
    enhance->add_option("--echo", enh_echo, "Recompute image and maps from this echo file");
    enhance->add_option("--scene", enh_scene, "Scene file providing the region");
    enhance->add_option("--image", enh_image, "Saved complex image");
    enhance->add_option("--maps", enh_maps, "Directory holding saved maps (<kind>.img)");
    enhance->add_option("--out", enh.out, "Output .img file")->required();
    auto *enh_floor_opt = enhance->add_option("--floor-db", enh_floor, "Also export a dB graymap with this floor");
    add_imaging_flags(enhance, enh_flags);

    // metrics
    MetricsArgs met;
    std::string met_reference, met_out;
    double met_radius = 0.0;
    auto *metrics = app.add_subcommand("metrics", "Mainlobe, PSLR and ghost levels of an image");
    metrics->add_option("--image", met.image, "Image to evaluate")->required();
    metrics->add_option("--scene", met.scene, "Scene file with the true targets")->required();
    metrics->add_option("--reference", met_reference, "Reference image for the suppression delta");
    auto *met_radius_opt = metrics->add_option("--exclusion-radius", met_radius, "Target exclusion radius (m)");
    metrics->add_option("--ghost-floor-db", met.ghost_floor_db, "Ignore ghosts below this level");
    metrics->add_option("--out", met_out, "Also write the report to this file");

    // pipeline
    PipelineArgs pipe;
    ImagingFlags pipe_flags;
    double pipe_floor = 0.0, pipe_radius = 0.0;
    auto *pipeline = app.add_subcommand("pipeline", "Simulate, image, enhance and evaluate in one run");
    pipeline->add_option("--scene", pipe.scene, "Scene configuration")->required();
    pipeline->add_option("--out", pipe.out_dir, "Output directory")->required();
    pipeline->add_option("--snr-db", pipe.snr_db, "Per-sample SNR in dB (omit for noise-free)");
    pipeline->add_option("--seed", pipe.seed, "Noise seed");
    auto *pipe_floor_opt = pipeline->add_option("--floor-db", pipe_floor, "Also export dB graymaps");
    auto *pipe_radius_opt = pipeline->add_option("--exclusion-radius", pipe_radius, "Target exclusion radius (m)");
    pipeline->add_option("--ghost-floor-db", pipe.ghost_floor_db, "Ignore ghosts below this level");
    add_imaging_flags(pipeline, pipe_flags);

    // export
    std::string exp_image, exp_out;
    double exp_floor = -40.0;
    auto *exporter = app.add_subcommand("export", "Write a dB graymap (PGM) of a saved image");
    exporter->add_option("--image", exp_image, "Input .img file")->required();
    exporter->add_option("--floor-db", exp_floor, "Dynamic-range floor in dB");
    exporter->add_option("--out", exp_out, "Output .pgm file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try
    {
        if (simulate->parsed())
            return run_simulate(sim, std::cout, std::cerr);

        if (image->parsed())
        {
            img.imaging = resolve(img_flags);
            if (!img_scene.empty())
                img.scene = img_scene;
            if (*img_floor_opt)
                img.floor_db = img_floor;
            return run_image(img, std::cout, std::cerr);
        }

        if (enhance->parsed())
        {
            const auto kind = parse_map_kind(enh_map);
            if (!kind)
            {
                std::cerr << "error: unknown map '" << enh_map << "'\n";
                return kExitInputError;
            }
            enh.map = *kind;
            enh.imaging = resolve(enh_flags);
            if (!enh_echo.empty())
                enh.echo = enh_echo;
            if (!enh_scene.empty())
                enh.scene = enh_scene;
            if (!enh_image.empty())
                enh.image = enh_image;
            if (!enh_maps.empty())
                enh.maps_dir = enh_maps;
            if (*enh_floor_opt)
                enh.floor_db = enh_floor;
            return run_enhance(enh, std::cout, std::cerr);
        }

        if (metrics->parsed())
        {
            if (!met_reference.empty())
                met.reference = met_reference;
            if (!met_out.empty())
                met.out = met_out;
            if (*met_radius_opt)
                met.exclusion_radius = met_radius;
            return run_metrics(met, std::cout, std::cerr);
        }

        if (pipeline->parsed())
        {
            pipe.imaging = resolve(pipe_flags);
            if (*pipe_floor_opt)
                pipe.floor_db = pipe_floor;
            if (*pipe_radius_opt)
                pipe.exclusion_radius = pipe_radius;
            return run_pipeline(pipe, std::cout, std::cerr);
        }

        if (exporter->parsed())
            return run_export(exp_image, exp_floor, exp_out, std::cerr);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
