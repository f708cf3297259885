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

#ifndef NFMIMO_SVG_HPP
#define NFMIMO_SVG_HPP

#include <Eigen/Core>

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace nfmimo
{
    struct PlotSeries
    {
        std::string name;
        std::vector<double> x;
        std::vector<double> y; // non-finite values break the line
    };

    struct PlotLabels
    {
        std::string title;
        std::string x;
        std::string y;
    };

    // Static line chart; an optional vertical marker is drawn dashed.
    std::string line_plot_svg(const PlotLabels &labels, const std::vector<PlotSeries> &series,
                              double vertical_marker = std::numeric_limits<double>::quiet_NaN());

    // Grey-scale heat map, darker for larger values, clamped to [lo, hi].
    std::string heatmap_svg(const std::string &title, const Eigen::MatrixXd &m, double lo, double hi);

    void save_text(const std::filesystem::path &path, const std::string &text);
}

#endif
