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

#include "cfimage/metrics.hpp"

#include "cfimage/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cfimage
{
    double magnitude_db(double magnitude, double reference)
    {
        if (magnitude <= 0.0)
            return -std::numeric_limits<double>::infinity();
        return 20.0 * std::log10(magnitude / reference);
    }

    ImageCut extract_cut(const ImageGrid &image, Position2D through, CutAxis axis)
    {
        const ImageRegion &region = image.region();
        if (!region.contains(through))
            throw InputError("cut position lies outside the image region");
        const std::size_t col = region.column_of(through.x);
        const std::size_t row = region.row_of(through.y);

        ImageCut cut;
        cut.axis = axis;
        std::vector<double> mags;
        if (axis == CutAxis::range)
        {
            for (std::size_t l = 0; l < region.ny(); ++l)
            {
                cut.coordinates.push_back(region.y_center(l));
                mags.push_back(std::abs(image.at(col, l)));
            }
        }
        else
        {
            for (std::size_t k = 0; k < region.nx(); ++k)
            {
                cut.coordinates.push_back(region.x_center(k));
                mags.push_back(std::abs(image.at(k, row)));
            }
        }

        const double peak = *std::max_element(mags.begin(), mags.end());
        cut.values_db.reserve(mags.size());
        for (double m : mags)
            cut.values_db.push_back(peak > 0.0 ? magnitude_db(m, peak) : 0.0);
        return cut;
    }

    double peak_sidelobe_ratio(const ImageCut &cut)
    {
        const auto &v = cut.values_db;
        if (v.size() < 3)
            throw InputError("peak sidelobe ratio needs at least three cut samples");

        const std::size_t peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        std::size_t left = peak;
        while (left > 0 && v[left - 1] < v[left])
            --left;
        std::size_t right = peak;
        while (right + 1 < v.size() && v[right + 1] < v[right])
            ++right;

        double sidelobe = kNoSidelobe;
        bool found = false;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if (i >= left && i <= right)
                continue;
            if (!found || v[i] > sidelobe)
                sidelobe = v[i];
            found = true;
        }
        if (!found || sidelobe == kNoSidelobe)
            return kNoSidelobe;
        return sidelobe - v[peak];
    }

    double default_exclusion_radius(const FrequencyGrid &frequencies, double wave_speed)
    {
        return 3.0 * wave_speed / (2.0 * frequencies.bandwidth());
    }

    std::vector<GhostPeak> ghost_level(const ImageGrid &image, const std::vector<Position2D> &true_targets,
                                       double exclusion_radius, double floor_db)
    {
        if (!(exclusion_radius > 0.0))
            throw InputError("ghost exclusion radius must be positive");

        const ImageRegion &region = image.region();
        const std::size_t nx = region.nx();
        const std::size_t ny = region.ny();
        std::vector<double> mag(image.size());
        for (std::size_t p = 0; p < mag.size(); ++p)
            mag[p] = std::abs(image[p]);
        const double peak = *std::max_element(mag.begin(), mag.end());

        std::vector<GhostPeak> ghosts;
        if (peak <= 0.0)
            return ghosts;

        for (std::size_t l = 0; l < ny; ++l)
            for (std::size_t k = 0; k < nx; ++k)
            {
                const std::size_t p = region.index(k, l);
                const Position2D centre = region.center(k, l);
                const bool excluded = std::any_of(true_targets.begin(), true_targets.end(), [&](Position2D t)
                                                  { return distance(centre, t) <= exclusion_radius; });
                if (excluded)
                    continue;
                const double level = magnitude_db(mag[p], peak);
                if (level < floor_db)
                    continue;

                bool is_max = true;
                for (int dl = -1; dl <= 1 && is_max; ++dl)
                    for (int dk = -1; dk <= 1 && is_max; ++dk)
                    {
                        if (dk == 0 && dl == 0)
                            continue;
                        const auto kk = static_cast<std::ptrdiff_t>(k) + dk;
                        const auto ll = static_cast<std::ptrdiff_t>(l) + dl;
                        if (kk < 0 || ll < 0 || kk >= static_cast<std::ptrdiff_t>(nx) ||
                            ll >= static_cast<std::ptrdiff_t>(ny))
                            continue;
                        const std::size_t q = region.index(static_cast<std::size_t>(kk), static_cast<std::size_t>(ll));
                        if (mag[q] > mag[p] || (mag[q] == mag[p] && q < p))
                            is_max = false;
                    }
                if (is_max)
                    ghosts.push_back({centre, p, level});
            }

        std::stable_sort(ghosts.begin(), ghosts.end(), [](const GhostPeak &a, const GhostPeak &b)
                         { return a.level_db > b.level_db; });
        return ghosts;
    }

    double suppression_delta(const ImageGrid &before, const ImageGrid &after, Position2D at)
    {
        if (!(before.region() == after.region()))
            throw InputError("suppression delta needs images over the same region");
        const double peak_before = before.peak_magnitude();
        const double peak_after = after.peak_magnitude();
        if (peak_before <= 0.0 || peak_after <= 0.0)
            throw InputError("suppression delta of an all-zero image");
        const std::size_t p = before.region().index_of(at);
        return magnitude_db(std::abs(after[p]), peak_after) - magnitude_db(std::abs(before[p]), peak_before);
    }

    QualityReport quality_report(const ImageGrid &image, const std::vector<Position2D> &true_targets,
                                 double exclusion_radius, double floor_db)
    {
        QualityReport report;
        const std::size_t peak = image.peak_index();
        report.mainlobe_peak = std::abs(image[peak]);
        report.peak_position = image.region().center(peak);
        if (report.mainlobe_peak == 0.0)
        {
            report.notes.push_back("image is identically zero");
            return report;
        }
        if (image.region().ny() >= 3)
            report.pslr_range = peak_sidelobe_ratio(extract_cut(image, report.peak_position, CutAxis::range));
        else
            report.notes.push_back("range cut too short for PSLR");
        if (image.region().nx() >= 3)
            report.pslr_azimuth = peak_sidelobe_ratio(extract_cut(image, report.peak_position, CutAxis::azimuth));
        else
            report.notes.push_back("azimuth cut too short for PSLR");
        report.ghost_levels = ghost_level(image, true_targets, exclusion_radius, floor_db);
        return report;
    }

    namespace
    {
        std::string fmt(double v, int decimals)
        {
            if (std::isinf(v))
                return v < 0 ? "-inf" : "inf";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
            return buf;
        }
    }

    namespace
    {
        constexpr std::size_t kReportedGhosts = 10;
    }

    std::string format_report(const std::string &label, const QualityReport &report)
    {
        std::ostringstream os;
        os << "== " << label << '\n'
           << "  peak magnitude    " << fmt(report.mainlobe_peak, 6) << " at (" << fmt(report.peak_position.x, 4)
           << ", " << fmt(report.peak_position.y, 4) << ") m\n"
           << "  PSLR range        " << fmt(report.pslr_range, 2) << " dB\n"
           << "  PSLR azimuth      " << fmt(report.pslr_azimuth, 2) << " dB\n"
           << "  ghost peaks       " << report.ghost_levels.size() << '\n';
        const std::size_t listed = std::min(report.ghost_levels.size(), kReportedGhosts);
        for (std::size_t i = 0; i < listed; ++i)
        {
            const auto &g = report.ghost_levels[i];
            os << "    (" << fmt(g.position.x, 4) << ", " << fmt(g.position.y, 4) << ") " << fmt(g.level_db, 2)
               << " dB\n";
        }
        if (listed < report.ghost_levels.size())
            os << "    ... " << report.ghost_levels.size() - listed << " weaker peaks omitted\n";
        for (const auto &n : report.notes)
            os << "  note: " << n << '\n';

        os << label << ".peak=" << fmt(report.mainlobe_peak, 6) << '\n'
           << label << ".peak_x=" << fmt(report.peak_position.x, 6) << '\n'
           << label << ".peak_y=" << fmt(report.peak_position.y, 6) << '\n'
           << label << ".pslr_range_db=" << fmt(report.pslr_range, 4) << '\n'
           << label << ".pslr_azimuth_db=" << fmt(report.pslr_azimuth, 4) << '\n'
           << label << ".ghost_count=" << report.ghost_levels.size() << '\n';
        for (std::size_t i = 0; i < listed; ++i)
        {
            const auto &g = report.ghost_levels[i];
            os << label << ".ghost" << i << "=" << fmt(g.position.x, 6) << "," << fmt(g.position.y, 6) << ","
               << fmt(g.level_db, 4) << '\n';
        }
        return os.str();
    }
}
