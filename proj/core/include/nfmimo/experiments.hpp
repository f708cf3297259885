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

#ifndef NFMIMO_EXPERIMENTS_HPP
#define NFMIMO_EXPERIMENTS_HPP

#include "nfmimo/config.hpp"
#include "nfmimo/csv.hpp"
#include "nfmimo/geometry.hpp"
#include "nfmimo/grid_search.hpp"
#include "nfmimo/waveband.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace nfmimo
{
    // Receiver designs compared on a linear broadside link:
    //   1  four-sub-array centers, spacings from an exact-channel grid search
    //   2  four-sub-array centers, spacings from a sub-array quartic grid search
    //   3  four-sub-array closed form
    //   4  uniform array with the paraxial spacing
    // Every design is scored on the exact channel.
    struct DesignEvaluation
    {
        int design = 0;
        bool feasible = false;
        std::vector<double> spacings_lam; // one per pair (designs 1-3) or one value (design 4)
        std::vector<double> centers_lam;  // pair centers |x|, empty for design 4
        double effective_rank = std::numeric_limits<double>::quiet_NaN();
        Eigen::MatrixXd ortho_db;
        std::vector<std::string> diagnostics;
    };

    // Linear broadside link: transmitter of L1 elements at the origin,
    // receiver of m1 elements centered at (0, y_o, 0).
    struct LinearLink
    {
        ArrayGeometry tx;
        int m1;
        double y_o; // [m]
        Waveband waveband;
    };

    DesignEvaluation evaluate_design4(const LinearLink &link);
    DesignEvaluation evaluate_design3(const LinearLink &link);
    DesignEvaluation evaluate_grid_design(const LinearLink &link, const GridAxis &axis, GridObjective objective);

    // Exact-channel metrics of an arbitrary receiver layout.
    DesignEvaluation score_layout(const ArrayGeometry &tx, const ElementLayout &rx, const Waveband &w);

    // Result of one experiment: CSV tables and optional SVG renderings keyed by
    // file name.
    struct ExperimentOutput
    {
        std::map<std::string, CsvTable> tables;
        std::map<std::string, std::string> plots;

        void save(const std::filesystem::path &dir, bool with_plots) const;
    };

    ExperimentOutput run_elevation_sweep(const ExperimentConfig &cfg);
    ExperimentOutput run_antenna_sweep(const ExperimentConfig &cfg);
    ExperimentOutput run_spacing_sweep(const ExperimentConfig &cfg);
    ExperimentOutput run_table2(const ExperimentConfig &cfg);
    ExperimentOutput run_ortho_map(const ExperimentConfig &cfg);

    // Built-in scenarios: fig-elevation, fig-antennas, fig-spacing, fig-ortho,
    // table2. Throws ConfigError for an unknown name.
    ExperimentConfig default_experiment(const std::string &name);
    std::vector<std::string> experiment_names();
}

#endif
