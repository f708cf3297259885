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

#include "nfmimo/svg.hpp"
#include "nfmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nfmimo
{
    namespace
    {
        constexpr double width = 640, height = 420;
        constexpr double left = 70, right = 170, top = 40, bottom = 55;
        const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

        std::string escape(const std::string &s)
        {
            std::string out;
            for (char c : s)
            {
                switch (c)
                {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                default: out += c;
                }
            }
            return out;
        }

        std::string num(double v)
        {
            std::ostringstream s;
            s.precision(6);
            s << v;
            return s.str();
        }

        // Rounded tick step giving roughly five intervals.
        double nice_step(double span)
        {
            const double raw = span / 5.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            for (double f : {1.0, 2.0, 5.0, 10.0})
                if (raw <= f * mag)
                    return f * mag;
            return 10.0 * mag;
        }

        void range(const std::vector<PlotSeries> &series, bool use_x, double &lo, double &hi)
        {
            lo = std::numeric_limits<double>::infinity();
            hi = -lo;
            for (const auto &s : series)
                for (double v : use_x ? s.x : s.y)
                    if (std::isfinite(v))
                    {
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
            if (!std::isfinite(lo))
            {
                lo = 0.0;
                hi = 1.0;
            }
            if (hi - lo < 1e-12)
            {
                lo -= 0.5;
                hi += 0.5;
            }
        }
    }

    std::string line_plot_svg(const PlotLabels &labels, const std::vector<PlotSeries> &series, double marker)
    {
        double x0, x1, y0, y1;
        range(series, true, x0, x1);
        range(series, false, y0, y1);
        if (std::isfinite(marker))
        {
            x0 = std::min(x0, marker);
            x1 = std::max(x1, marker);
        }
        const double pw = width - left - right, ph = height - top - bottom;
        auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
        auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
          << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
          << escape(labels.title) << "</text>\n";
        o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
          << "\" fill=\"none\" stroke=\"black\"/>\n";

        const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
        for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs)
            o << "<line x1=\"" << px(t) << "\" y1=\"" << top + ph << "\" x2=\"" << px(t) << "\" y2=\""
              << top + ph + 5 << "\" stroke=\"black\"/><text x=\"" << px(t) << "\" y=\"" << top + ph + 18
              << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
        for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys)
            o << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
              << "\" stroke=\"black\"/><text x=\"" << left - 8 << "\" y=\"" << py(t) + 4
              << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
        o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
          << escape(labels.x) << "</text>\n";
        o << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
          << escape(labels.y) << "</text>\n";

        if (std::isfinite(marker))
            o << "<line x1=\"" << px(marker) << "\" y1=\"" << top << "\" x2=\"" << px(marker) << "\" y2=\""
              << top + ph << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";

        for (std::size_t k = 0; k < series.size(); ++k)
        {
            const auto &s = series[k];
            const char *colour = palette[k % std::size(palette)];
            std::string path;
            bool pen = false;
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                {
                    pen = false;
                    continue;
                }
                path += (pen ? " L" : " M") + num(px(s.x[i])) + "," + num(py(s.y[i]));
                pen = true;
                o << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2.5\" fill=\"" << colour
                  << "\"/>\n";
            }
            if (!path.empty())
                o << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
            const double ly = top + 14 + 18 * double(k);
            o << "<line x1=\"" << width - right + 12 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 34
              << "\" y2=\"" << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/><text x=\""
              << width - right + 40 << "\" y=\"" << ly + 4 << "\">" << escape(s.name) << "</text>\n";
        }
        o << "</svg>\n";
        return o.str();
    }

    std::string heatmap_svg(const std::string &title, const Eigen::MatrixXd &m, double lo, double hi)
    {
        if (m.size() == 0 || !(hi > lo))
            throw Error("heatmap_svg: empty matrix or degenerate colour range");
        const double cell = std::max(8.0, 400.0 / double(std::max(m.rows(), m.cols())));
        const double w = left + cell * double(m.cols()) + 90, h = top + cell * double(m.rows()) + 30;
        std::ostringstream o;
        o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
          << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        o << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
          << "</text>\n";
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
            {
                const double t = std::clamp((m(r, c) - lo) / (hi - lo), 0.0, 1.0);
                const int g = static_cast<int>(std::lround(255.0 * (1.0 - t)));
                o << "<rect x=\"" << left + cell * double(c) << "\" y=\"" << top + cell * double(r) << "\" width=\""
                  << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << g << ',' << g << ',' << g
                  << ")\"><title>" << num(m(r, c)) << "</title></rect>\n";
            }
        const double bx = left + cell * double(m.cols()) + 20;
        o << "<text x=\"" << bx << "\" y=\"" << top + 10 << "\">" << num(hi) << "</text>\n";
        o << "<text x=\"" << bx << "\" y=\"" << top + cell * double(m.rows()) << "\">" << num(lo) << "</text>\n";
        o << "</svg>\n";
        return o.str();
    }

    void save_text(const std::filesystem::path &path, const std::string &text)
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot write " + path.string());
        f << text;
    }
}
