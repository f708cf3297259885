// SPDX-License-Identifier: Apache-2.0
//
// nfmimo - line-of-sight MIMO array placement toolkit
// Copyright (C) 2026 The nfmimo Authors
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

#ifndef NFMIMO_GRID_SEARCH_HPP
#define NFMIMO_GRID_SEARCH_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/waveband.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace nfmimo
{
    inline constexpr std::size_t max_grid_points = 1000000;

    // Closed interval of spacings in wavelength multiples. Point k sits at
    // min + k * step, up to and including max (within round-off).
    struct GridAxis
    {
        double min_lam = 0.5;
        double max_lam = 80.0;
        double step_lam = 0.25;

        std::size_t points() const;
        double value(std::size_t k) const { return min_lam + static_cast<double>(k) * step_lam; }
    };

    enum class GridObjective
    {
        Exact,
        QuarticSubArray
    };

    const char *to_string(GridObjective o);

    struct GridSpec
    {
        std::vector<GridAxis> axes;
        GridObjective objective = GridObjective::Exact;
        bool keep_trace = false;

        void validate() const; // throws Error on a degenerate grid
        std::size_t total_points() const;
    };

    struct GridPoint
    {
        std::vector<double> params_lam;
        double effective_rank = 0.0;
    };

    struct GridResult
    {
        std::vector<double> best_params; // wavelength multiples, one per axis
        double best_effective_rank = 0.0;
        std::size_t evaluated = 0;
        std::vector<GridPoint> trace; // every point in grid order when requested
    };

    // Uniform receiver template: one axis sets both spacings (tied), two axes
    // set d1 and d2. A linear receiver takes one axis.
    GridResult grid_search(const ArrayGeometry &tx, const ArrayGeometry &rx_template, const Waveband &w,
                           const GridSpec &spec);

    // Partition template with fixed centers and counts. Each axis sets the
    // spacing of one mirror pair (or one sub-array when not symmetric), in
    // partition order; at most three axes.
    GridResult grid_search(const ArrayGeometry &tx, const SubArrayPartition &rx_template, const Waveband &w,
                           const GridSpec &spec);

    // CSV: param1_lam,...,paramK_lam,neff
    void write_grid_trace_csv(std::ostream &out, const GridResult &r);
}

#endif
