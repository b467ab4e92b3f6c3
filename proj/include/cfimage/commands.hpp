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

#include "cfimage/coherence.hpp"
#include "cfimage/forward.hpp"
#include "cfimage/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace cfimage
{
    // Exit statuses shared by every subcommand.
    inline constexpr int kExitOk = 0;
    inline constexpr int kExitInputError = 1;
    inline constexpr int kExitInternalError = 2;

    // "x0,x1,y0,y1,nx,ny"
    ImageRegion parse_region_spec(const std::string &spec);

    struct ImagingOptions
    {
        std::optional<ImageRegion> region; // overrides the scene region
        bool fast_bp = false;
        std::size_t upsample = 8;
        bool f_weighted = false;
        unsigned threads = 0;
    };

    struct SimulateArgs
    {
        std::filesystem::path scene;
        std::filesystem::path out;
        double snr_db = kNoiseFree;
        std::uint64_t seed = 0;
    };

    struct ImageArgs
    {
        std::filesystem::path echo;
        std::optional<std::filesystem::path> scene; // source of the region when --region is absent
        ImagingOptions imaging;
        std::filesystem::path out;
        std::optional<double> floor_db; // also write <out>.pgm
    };

    // Either recompute from an echo, or combine a saved image with saved maps.
    struct EnhanceArgs
    {
        MapKind map = MapKind::cf2d;
        std::optional<std::filesystem::path> echo;
        std::optional<std::filesystem::path> scene;
        std::optional<std::filesystem::path> image;
        std::optional<std::filesystem::path> maps_dir;
        ImagingOptions imaging;
        std::filesystem::path out;
        std::optional<double> floor_db;
    };

    struct MetricsArgs
    {
        std::filesystem::path image;
        std::filesystem::path scene; // true targets and the default exclusion radius
        std::optional<std::filesystem::path> reference;
        std::optional<double> exclusion_radius;
        double ghost_floor_db = -40.0;
        std::optional<std::filesystem::path> out;
    };

    struct PipelineArgs
    {
        std::filesystem::path scene;
        std::filesystem::path out_dir;
        ImagingOptions imaging;
        double snr_db = kNoiseFree;
        std::uint64_t seed = 0;
        std::optional<double> floor_db; // also export graymaps
        std::optional<double> exclusion_radius;
        double ghost_floor_db = -40.0;
    };

    // Each returns kExitOk, kExitInputError or kExitInternalError; diagnostics go to `err`.
    int run_simulate(const SimulateArgs &args, std::ostream &out, std::ostream &err);
    int run_image(const ImageArgs &args, std::ostream &out, std::ostream &err);
    int run_enhance(const EnhanceArgs &args, std::ostream &out, std::ostream &err);
    int run_metrics(const MetricsArgs &args, std::ostream &out, std::ostream &err);
    int run_pipeline(const PipelineArgs &args, std::ostream &out, std::ostream &err);
    int run_export(const std::filesystem::path &image, double floor_db, const std::filesystem::path &out,
                   std::ostream &err);
}
