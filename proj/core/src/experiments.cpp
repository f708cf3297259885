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

#include "nfmimo/experiments.hpp"
#include "nfmimo/channel.hpp"
#include "nfmimo/error.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/paraxial.hpp"
#include "nfmimo/spectral.hpp"
#include "nfmimo/svg.hpp"

#include <algorithm>
#include <cmath>

namespace nfmimo
{
    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        double deg(double d) { return d * pi / 180.0; }

        std::vector<SubArraySpec> half_of(const SubArrayPartition &p)
        {
            return {p.subarrays().begin(), p.subarrays().begin() + static_cast<std::ptrdiff_t>(p.size() / 2)};
        }

        LinearLink link_from(const ExperimentConfig &cfg, int m1, double delta_t_lam)
        {
            const auto w = cfg.waveband();
            const auto &r = cfg.receiver.center_lam;
            const double y_o = w.from_lambda(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]));
            return {ArrayGeometry::linear(cfg.transmitter.n1, w.from_lambda(delta_t_lam)), m1, y_o, w};
        }

        std::vector<double> to_lambda(const std::vector<double> &v, const Waveband &w)
        {
            std::vector<double> out;
            for (double x : v)
                out.push_back(w.to_lambda(x));
            return out;
        }

        double neff_or_nan(const DesignEvaluation &d) { return d.effective_rank; }

        std::string design_name(int d) { return "Design " + std::to_string(d); }

        // The four designs at one operating point, restricted to the configured strategies.
        std::map<int, DesignEvaluation> evaluate_designs(const ExperimentConfig &cfg, const LinearLink &link)
        {
            std::map<int, DesignEvaluation> out;
            if (cfg.uses(Strategy::Grid1))
                out[1] = evaluate_grid_design(link, cfg.grid.axis(), GridObjective::Exact);
            if (cfg.uses(Strategy::Grid2))
                out[2] = evaluate_grid_design(link, cfg.grid.axis(), GridObjective::QuarticSubArray);
            if (cfg.uses(Strategy::FourSub))
                out[3] = evaluate_design3(link);
            if (cfg.uses(Strategy::Paraxial))
                out[4] = evaluate_design4(link);
            return out;
        }

        double neff_of(const std::map<int, DesignEvaluation> &m, int d)
        {
            const auto it = m.find(d);
            return it == m.end() ? nan : neff_or_nan(it->second);
        }

        void require(bool ok, const std::string &what)
        {
            if (!ok)
                throw ConfigError(what);
        }
    }

    // ------------------------------------------------------------------ designs

    DesignEvaluation score_layout(const ArrayGeometry &tx, const ElementLayout &rx, const Waveband &w)
    {
        DesignEvaluation d;
        const auto g = gram(exact_channel(expand_uniform(tx), rx, w));
        d.effective_rank = effective_rank(hermitian_eigenvalues(g));
        d.ortho_db = orthogonality_ratio_db(g);
        d.feasible = true;
        return d;
    }

    DesignEvaluation evaluate_design4(const LinearLink &link)
    {
        const auto &w = link.waveband;
        const auto tmpl = ArrayGeometry::linear(link.m1, w.wavelength(), Vec3(0.0, link.y_o, 0.0));
        const auto sol = solve_spacings(link.tx, tmpl, w);
        DesignEvaluation d;
        if (std::isfinite(sol.d1_r))
            d = score_layout(link.tx, expand_uniform(tmpl.with_spacings(sol.d1_r, sol.d1_r)), w);
        d.design = 4;
        d.feasible = sol.feasible;
        d.spacings_lam = {w.to_lambda(sol.d1_r)};
        d.diagnostics = sol.diagnostics;
        return d;
    }

    DesignEvaluation evaluate_design3(const LinearLink &link)
    {
        const auto &w = link.waveband;
        DesignEvaluation d;
        d.design = 3;
        if (link.m1 % 4 != 0)
        {
            d.diagnostics.push_back("M1 = " + std::to_string(link.m1) + " is not a multiple of 4");
            return d;
        }
        const auto sol = solve_four_subarrays(link.tx, link.m1 / 4, link.m1 / 4, link.y_o, w);
        try
        {
            d = score_layout(link.tx, expand_partition(sol.partition()), w);
        }
        catch (const Error &e)
        {
            d.diagnostics.push_back(e.what());
        }
        d.design = 3;
        d.feasible = sol.feasible;
        d.spacings_lam = to_lambda(sol.spacing, w);
        d.centers_lam = to_lambda(sol.x_center, w);
        d.diagnostics.insert(d.diagnostics.end(), sol.diagnostics.begin(), sol.diagnostics.end());
        return d;
    }

    DesignEvaluation evaluate_grid_design(const LinearLink &link, const GridAxis &axis, GridObjective objective)
    {
        const auto &w = link.waveband;
        DesignEvaluation d;
        d.design = objective == GridObjective::Exact ? 1 : 2;
        if (link.m1 % 4 != 0)
        {
            d.diagnostics.push_back("M1 = " + std::to_string(link.m1) + " is not a multiple of 4");
            return d;
        }
        const auto sol = solve_four_subarrays(link.tx, link.m1 / 4, link.m1 / 4, link.y_o, w);
        std::optional<SubArrayPartition> tmpl;
        try
        {
            tmpl = sol.partition();
        }
        catch (const Error &e)
        {
            d.diagnostics.push_back(e.what());
            return d;
        }
        GridSpec spec;
        spec.axes = {axis, axis};
        spec.objective = objective;
        const auto best = grid_search(link.tx, *tmpl, w, spec);

        auto half = half_of(*tmpl);
        for (std::size_t i = 0; i < half.size(); ++i)
            half[i].d1 = half[i].d2 = w.from_lambda(best.best_params[i]);
        const int design = d.design;
        d = score_layout(link.tx, expand_partition(SubArrayPartition::mirrored(half)), w);
        d.design = design;
        d.spacings_lam = best.best_params;
        d.centers_lam = to_lambda(sol.x_center, w);
        return d;
    }

    // ------------------------------------------------------------------ output

    void ExperimentOutput::save(const std::filesystem::path &dir, bool with_plots) const
    {
        std::filesystem::create_directories(dir);
        for (const auto &[name, table] : tables)
            table.save(dir / name);
        if (with_plots)
            for (const auto &[name, svg] : plots)
                save_text(dir / name, svg);
    }

    // -------------------------------------------------------------- experiments

    ExperimentOutput run_elevation_sweep(const ExperimentConfig &cfg)
    {
        require(cfg.sweep.variable == SweepVariable::ElevationDeg, "sweep.variable: elevation_deg required");
        const auto w = cfg.waveband();
        const auto &r = cfg.receiver.center_lam;
        const double dist = w.from_lambda(std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]));
        require(dist > 0.0, "receiver.center_lam: must differ from the transmitter position");
        const std::vector<double> dts =
            cfg.delta_t_lam.empty() ? std::vector<double>{cfg.transmitter.d1_lam} : cfg.delta_t_lam;
        const bool planar = cfg.receiver.n2 > 1;

        CsvTable t;
        t.columns = {"elevation_deg", "delta_t_lam",  "paraxial_d1_lam", "paraxial_d2_lam",
                     "neff_paraxial", "grid_d1_lam", "grid_d2_lam",     "neff_grid"};
        for (double dt : dts)
            for (double theta : cfg.sweep.values)
            {
                const auto tx = ArrayGeometry(cfg.transmitter.n1, cfg.transmitter.n2, w.from_lambda(dt),
                                              w.from_lambda(dt));
                const Vec3 c(0.0, dist * std::cos(deg(theta)), dist * std::sin(deg(theta)));
                const ArrayGeometry tmpl(cfg.receiver.n1, cfg.receiver.n2, w.wavelength(), w.wavelength(), c,
                                         cfg.receiver.rotation_rad, cfg.receiver.tilt_rad);
                std::vector<double> row{theta, dt, nan, nan, nan, nan, nan, nan};
                if (cfg.uses(Strategy::Paraxial))
                {
                    const auto sol = solve_spacings(tx, tmpl, w);
                    row[2] = w.to_lambda(sol.d1_r);
                    row[3] = w.to_lambda(sol.d2_r);
                    if (std::isfinite(sol.d1_r) && std::isfinite(sol.d2_r))
                        row[4] = score_layout(tx, expand_uniform(tmpl.with_spacings(sol.d1_r, sol.d2_r)), w)
                                     .effective_rank;
                }
                if (cfg.uses(Strategy::Grid1))
                {
                    GridSpec spec;
                    spec.axes.assign(planar ? 2 : 1, cfg.grid.axis());
                    spec.objective = GridObjective::Exact;
                    const auto best = grid_search(tx, tmpl, w, spec);
                    row[5] = best.best_params[0];
                    row[6] = planar ? best.best_params[1] : best.best_params[0];
                    row[7] = best.best_effective_rank;
                }
                t.add_row(row);
            }

        ExperimentOutput out;
        out.tables["fig_elevation.csv"] = t;
        std::vector<PlotSeries> series;
        for (double dt : dts)
        {
            PlotSeries p{"paraxial, dt=" + format_number(dt), {}, {}}, g{"grid, dt=" + format_number(dt), {}, {}};
            for (const auto &row : t.rows)
                if (row[1] == dt)
                {
                    p.x.push_back(row[0]);
                    p.y.push_back(row[4]);
                    g.x.push_back(row[0]);
                    g.y.push_back(row[7]);
                }
            if (cfg.uses(Strategy::Paraxial))
                series.push_back(p);
            if (cfg.uses(Strategy::Grid1))
                series.push_back(g);
        }
        out.plots["fig_elevation.svg"] =
            line_plot_svg({"Effective rank vs elevation", "elevation [deg]", "effective rank"}, series);
        return out;
    }

    ExperimentOutput run_antenna_sweep(const ExperimentConfig &cfg)
    {
        require(cfg.sweep.variable == SweepVariable::M1, "sweep.variable: m1 required");
        require(cfg.transmitter.n2 == 1 && cfg.receiver.n2 == 1, "antenna sweep needs linear arrays");
        const double dt = cfg.transmitter.d1_lam;
        const int l1 = cfg.transmitter.n1;

        // Minimum total count for an equal four-way split: every sub-array
        // must exceed gamma_i (L1 - 1) elements.
        const auto ref_link = link_from(cfg, 4 * l1, dt);
        const auto ref = solve_four_subarrays(ref_link.tx, l1, l1, ref_link.y_o, ref_link.waveband);
        const double gmax = ref.gamma.empty() ? nan : *std::max_element(ref.gamma.begin(), ref.gamma.end());
        const double threshold = 4.0 * gmax * (l1 - 1);

        CsvTable t;
        t.columns = {"M1",           "neff_design1",     "neff_design2", "neff_design3",
                     "neff_design4", "design3_feasible", "threshold_m1"};
        for (double mv : cfg.sweep.values)
        {
            const int m1 = static_cast<int>(mv);
            const auto designs = evaluate_designs(cfg, link_from(cfg, m1, dt));
            const auto d3 = designs.find(3);
            t.add_row({mv, neff_of(designs, 1), neff_of(designs, 2), neff_of(designs, 3), neff_of(designs, 4),
                       d3 == designs.end() ? nan : (d3->second.feasible ? 1.0 : 0.0), threshold});
        }

        ExperimentOutput out;
        out.tables["fig_antennas.csv"] = t;
        std::vector<PlotSeries> series;
        for (int d = 1; d <= 4; ++d)
            series.push_back({design_name(d), t.column("M1"), t.column("neff_design" + std::to_string(d))});
        out.plots["fig_antennas.svg"] = line_plot_svg(
            {"Effective rank vs receive antennas", "M1", "effective rank"}, series, threshold);
        return out;
    }

    namespace
    {
        CsvTable table2_rows(const ExperimentConfig &cfg, const std::vector<double> &dts,
                             std::map<double, std::map<int, DesignEvaluation>> &cache)
        {
            CsvTable t;
            t.columns = {"delta_t_lam", "design", "delta_r1_lam", "delta_r2_lam", "neff", "feasible"};
            for (double dt : dts)
            {
                auto it = cache.find(dt);
                if (it == cache.end())
                    it = cache.emplace(dt, evaluate_designs(cfg, link_from(cfg, cfg.receiver.n1, dt))).first;
                for (const auto &[k, d] : it->second)
                {
                    const double r1 = d.spacings_lam.empty() ? nan : d.spacings_lam[0];
                    const double r2 = d.spacings_lam.size() > 1 ? d.spacings_lam[1] : r1;
                    t.add_row({dt, double(k), r1, r2, d.effective_rank, d.feasible ? 1.0 : 0.0});
                }
            }
            return t;
        }

        PlotSeries table2_series(const CsvTable &t, int design)
        {
            PlotSeries s{design_name(design), {}, {}};
            for (const auto &row : t.rows)
                if (row[1] == design)
                {
                    s.x.push_back(row[0]);
                    s.y.push_back(row[2]);
                }
            return s;
        }

        std::string table2_plot(const CsvTable &t)
        {
            std::vector<PlotSeries> series;
            for (int d = 1; d <= 4; ++d)
                series.push_back(table2_series(t, d));
            return line_plot_svg({"Receive spacing (outer sub-array) vs transmit spacing", "delta_t [lambda]",
                                  "delta_r1 [lambda]"},
                                 series);
        }

        std::vector<double> table_points(const ExperimentConfig &cfg)
        {
            return cfg.delta_t_lam.empty() ? std::vector<double>{0.5, 1.0, 2.0} : cfg.delta_t_lam;
        }
    }

    ExperimentOutput run_spacing_sweep(const ExperimentConfig &cfg)
    {
        require(cfg.sweep.variable == SweepVariable::DeltaTLam, "sweep.variable: delta_t_lam required");
        require(cfg.transmitter.n2 == 1 && cfg.receiver.n2 == 1, "spacing sweep needs linear arrays");
        std::map<double, std::map<int, DesignEvaluation>> cache;

        CsvTable t;
        t.columns = {"delta_t_lam", "neff_design1", "neff_design2", "neff_design3", "neff_design4"};
        for (double dt : cfg.sweep.values)
        {
            auto &designs = cache[dt];
            designs = evaluate_designs(cfg, link_from(cfg, cfg.receiver.n1, dt));
            t.add_row({dt, neff_of(designs, 1), neff_of(designs, 2), neff_of(designs, 3), neff_of(designs, 4)});
        }
        const auto t2 = table2_rows(cfg, table_points(cfg), cache);

        ExperimentOutput out;
        out.tables["fig_spacing.csv"] = t;
        out.tables["table2.csv"] = t2;
        std::vector<PlotSeries> series;
        for (int d = 1; d <= 4; ++d)
            series.push_back(
                {design_name(d), t.column("delta_t_lam"), t.column("neff_design" + std::to_string(d))});
        out.plots["fig_spacing.svg"] =
            line_plot_svg({"Effective rank vs transmit spacing", "delta_t [lambda]", "effective rank"}, series);
        out.plots["table2.svg"] = table2_plot(t2);
        return out;
    }

    ExperimentOutput run_table2(const ExperimentConfig &cfg)
    {
        require(cfg.transmitter.n2 == 1 && cfg.receiver.n2 == 1, "table2 needs linear arrays");
        std::map<double, std::map<int, DesignEvaluation>> cache;
        ExperimentOutput out;
        out.tables["table2.csv"] = table2_rows(cfg, table_points(cfg), cache);
        out.plots["table2.svg"] = table2_plot(out.tables["table2.csv"]);
        return out;
    }

    ExperimentOutput run_ortho_map(const ExperimentConfig &cfg)
    {
        require(cfg.transmitter.n2 == 1 && cfg.receiver.n2 == 1, "orthogonality maps need linear arrays");
        const auto designs = evaluate_designs(cfg, link_from(cfg, cfg.receiver.n1, cfg.transmitter.d1_lam));
        ExperimentOutput out;
        CsvTable summary;
        summary.columns = {"design", "max_offdiag_db", "neff", "feasible"};
        for (const auto &[k, d] : designs)
        {
            if (k == 4 || d.ortho_db.size() == 0)
                continue;
            const std::string base = "ortho_design" + std::to_string(k);
            out.tables[base + ".csv"] = matrix_table(d.ortho_db);
            out.plots[base + ".svg"] =
                heatmap_svg("Orthogonality ratio [dB], " + design_name(k), d.ortho_db, -60.0, 0.0);
            summary.add_row({double(k), max_off_diagonal(d.ortho_db), d.effective_rank, d.feasible ? 1.0 : 0.0});
        }
        out.tables["ortho_summary.csv"] = summary;
        return out;
    }

    // ---------------------------------------------------------------- defaults

    std::vector<std::string> experiment_names()
    {
        return {"fig-elevation", "fig-antennas", "fig-spacing", "fig-ortho", "table2"};
    }

    ExperimentConfig default_experiment(const std::string &name)
    {
        ExperimentConfig c;
        c.scenario = name;
        c.frequency_ghz = 28.0;
        c.transmitter = {16, 1, 0.5, 0.5, {0.0, 0.0, 0.0}, 0.0, 0.0};
        c.receiver = {48, 1, 1.0, 1.0, {0.0, 256.0, 0.0}, 0.0, 0.0};
        c.output.dir = "out";
        const std::vector<Strategy> four{Strategy::Grid1, Strategy::Grid2, Strategy::FourSub, Strategy::Paraxial};
        if (name == "fig-elevation")
        {
            c.transmitter = {4, 4, 0.5, 0.5, {0.0, 0.0, 0.0}, 0.0, 0.0};
            c.receiver = {4, 4, 1.0, 1.0, {0.0, 256.0, 0.0}, 0.0, 0.0};
            c.sweep = {SweepVariable::ElevationDeg, {0, 10, 20, 30, 40, 50, 60}};
            c.delta_t_lam = {0.5, 1.0, 2.0};
            c.strategies = {Strategy::Paraxial, Strategy::Grid1};
            c.grid = {2.0, 600.0, 4.0, GridObjective::Exact};
        }
        else if (name == "fig-antennas")
        {
            c.sweep = {SweepVariable::M1, {16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64}};
            c.strategies = four;
            c.grid = {0.5, 80.0, 0.5, GridObjective::Exact};
        }
        else if (name == "fig-spacing")
        {
            c.sweep = {SweepVariable::DeltaTLam, {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}};
            c.delta_t_lam = {0.5, 1.0, 2.0};
            c.strategies = four;
            c.grid = {0.5, 80.0, 0.5, GridObjective::Exact};
        }
        else if (name == "fig-ortho")
            c.strategies = {Strategy::Grid1, Strategy::Grid2, Strategy::FourSub};
        else if (name == "table2")
        {
            c.delta_t_lam = {0.5, 1.0, 2.0};
            c.strategies = four;
        }
        else
            throw ConfigError("unknown experiment '" + name + "'");
        validate(c);
        return c;
    }
}
