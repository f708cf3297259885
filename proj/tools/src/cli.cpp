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

#include "nfmimo_cli/cli.hpp"

#include "nfmimo/channel.hpp"
#include "nfmimo/config.hpp"
#include "nfmimo/csv.hpp"
#include "nfmimo/error.hpp"
#include "nfmimo/experiments.hpp"
#include "nfmimo/grid_search.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/paraxial.hpp"
#include "nfmimo/spectral.hpp"
#include "nfmimo/svg.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace nfmimo::cli
{
    namespace fs = std::filesystem;

    namespace
    {
        struct Options
        {
            std::string config;
            std::string out;
            bool plots = false;
            std::string experiment;
        };

        // A file with several runs must name the one to use; a single-run file
        // is taken as is.
        ExperimentConfig load(const Options &o, const std::string &wanted)
        {
            if (o.config.empty())
            {
                if (wanted.empty())
                    throw ConfigError("--config: required for this command");
                return default_experiment(wanted);
            }
            const auto runs = load_config_file(o.config);
            if (runs.size() == 1)
                return runs.begin()->second;
            if (wanted.empty())
                throw ConfigError("--config: file holds several runs; this command needs a single configuration");
            const auto it = runs.find(wanted);
            if (it == runs.end())
                throw ConfigError("--config: no run named '" + wanted + "' in " + o.config);
            return it->second;
        }

        fs::path out_dir(const Options &o, const ExperimentConfig &cfg)
        {
            return o.out.empty() ? fs::path(cfg.output.dir) : fs::path(o.out);
        }

        bool plots(const Options &o, const ExperimentConfig &cfg) { return o.plots || cfg.output.plots; }

        void save_csv(const fs::path &dir, const std::string &name, const std::string &text)
        {
            save_text(dir / name, text);
        }

        double norm_lam(const std::array<double, 3> &c) { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }

        int report_infeasible(const std::vector<std::string> &diagnostics, std::ostream &err)
        {
            err << "infeasible design:\n";
            for (const auto &d : diagnostics)
                err << "  " << d << '\n';
            return infeasible;
        }

        // ------------------------------------------------------------ design

        int design_paraxial(const Options &o, std::ostream &out, std::ostream &err)
        {
            const auto cfg = load(o, "");
            const auto w = cfg.waveband();
            const auto tx = cfg.transmitter.geometry(w);
            const auto rx = cfg.receiver.geometry(w);
            const auto sol = solve_spacings(tx, rx, w);
            std::ostringstream csv;
            write_paraxial_csv_header(csv);
            write_paraxial_csv_row(csv, tx, rx, sol, w);
            const auto dir = out_dir(o, cfg);
            save_csv(dir, "paraxial.csv", csv.str());
            out << "delta_r1 = " << format_number(w.to_lambda(sol.d1_r)) << " lambda, delta_r2 = "
                << format_number(w.to_lambda(sol.d2_r)) << " lambda, vanishing off-diagonal: "
                << to_string(sol.zero_offdiag) << '\n';
            return sol.feasible ? ok : report_infeasible(sol.diagnostics, err);
        }

        void plot_nonparaxial(const fs::path &dir, const NonParaxialSolution &s, const Waveband &w)
        {
            PlotSeries series{"receiver elements", {}, {}};
            try
            {
                const auto layout = expand_partition(s.partition());
                for (std::size_t i = 0; i < layout.size(); ++i)
                {
                    series.x.push_back(double(i + 1));
                    series.y.push_back(w.to_lambda(layout.positions[i].x()));
                }
            }
            catch (const Error &)
            {
                return; // no geometry to draw
            }
            save_text(dir / "nonparaxial.svg",
                      line_plot_svg({"Receiver element positions", "element", "x [lambda]"}, {series}));
        }

        int design_nonparaxial(const std::string &kind, const Options &o, std::ostream &out, std::ostream &err)
        {
            const auto cfg = load(o, "");
            const auto w = cfg.waveband();
            if (cfg.transmitter.n2 != 1)
                throw ConfigError("transmitter.n2: the non-paraxial designs need a linear transmitter");
            const auto tx = cfg.transmitter.geometry(w);
            const double y_o = w.from_lambda(norm_lam(cfg.receiver.center_lam));
            if (!(y_o > 0.0))
                throw ConfigError("receiver.center_lam: must be away from the transmitter");

            NonParaxialSolution sol;
            if (kind == "two-sub")
                sol = solve_two_subarrays(tx, cfg.receiver.n1, y_o, w);
            else if (kind == "four-sub")
            {
                std::vector<int> counts;
                if (cfg.partition && !cfg.partition->counts.empty())
                    counts = cfg.partition->counts;
                else if (cfg.receiver.n1 % 4 == 0)
                    counts.assign(4, cfg.receiver.n1 / 4);
                else
                    throw ConfigError("receiver.n1: must be a multiple of 4 without partition.counts");
                if (counts.size() != 4 || counts[0] != counts[3] || counts[1] != counts[2])
                    throw ConfigError("partition.counts: four mirror-symmetric counts required");
                sol = solve_four_subarrays(tx, counts[0], counts[1], y_o, w);
            }
            else
            {
                if (!cfg.partition || cfg.partition->counts.empty())
                    throw ConfigError("partition.counts: required for the chain design");
                try
                {
                    sol = solve_chain(tx, cfg.partition->counts, y_o, w);
                }
                catch (const Error &e)
                {
                    throw ConfigError(std::string("partition.counts: ") + e.what());
                }
            }

            std::ostringstream csv;
            write_nonparaxial_csv_header(csv);
            write_nonparaxial_csv_rows(csv, sol, w);
            const auto dir = out_dir(o, cfg);
            save_csv(dir, "nonparaxial.csv", csv.str());
            if (plots(o, cfg))
                plot_nonparaxial(dir, sol, w);
            for (std::size_t i = 0; i < sol.pairs(); ++i)
                out << "pair " << i + 1 << ": |x| = " << format_number(w.to_lambda(sol.x_center[i]))
                    << " lambda, delta_r = " << format_number(w.to_lambda(sol.spacing[i]))
                    << " lambda, |eta| = " << format_number(sol.eta[i]) << ", gamma = " << format_number(sol.gamma[i])
                    << ", min count = " << sol.min_counts[i] << '\n';
            return sol.feasible ? ok : report_infeasible(sol.diagnostics, err);
        }

        // ---------------------------------------------------------- evaluate

        ElementLayout receiver_layout(const ExperimentConfig &cfg, const Waveband &w)
        {
            if (cfg.partition && !cfg.partition->subarrays.empty())
                return expand_partition(cfg.partition_geometry());
            return expand_uniform(cfg.receiver.geometry(w));
        }

        int evaluate(const Options &o, std::ostream &out, std::ostream &)
        {
            const auto cfg = load(o, "");
            const auto w = cfg.waveband();
            const auto tx = expand_uniform(cfg.transmitter.geometry(w));
            const auto rx = receiver_layout(cfg, w);
            const auto h = exact_channel(tx, rx, w);
            const auto rep = analyze(h, cfg.noise_power_w, cfg.total_power_w);
            const auto dir = out_dir(o, cfg);

            std::ostringstream csv;
            write_report_csv_header(csv);
            write_report_csv_row(csv, cfg.scenario, rep);
            save_csv(dir, "report.csv", csv.str());
            save_text(dir / "report.json", report_to_json(cfg.scenario, rep));
            std::ostringstream ch;
            write_channel_csv(ch, h);
            save_csv(dir, "channel.csv", ch.str());
            save_csv(dir, "ortho.csv", [&] {
                std::ostringstream s;
                matrix_table(rep.ortho_ratio_db).write(s);
                return s.str();
            }());
            if (plots(o, cfg))
            {
                PlotSeries ev{"eigenvalues", {}, {}};
                for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
                {
                    ev.x.push_back(double(i + 1));
                    ev.y.push_back(10.0 * std::log10(std::max(rep.eigenvalues[i], 1e-300)));
                }
                save_text(dir / "eigenvalues.svg",
                          line_plot_svg({"Gram eigenvalues", "index", "eigenvalue [dB]"}, {ev}));
                save_text(dir / "ortho.svg", heatmap_svg("Orthogonality ratio [dB]", rep.ortho_ratio_db, -60.0, 0.0));
            }
            const auto prec = out.precision(10);
            out << "effective rank: " << rep.effective_rank << '\n'
                << "numeric rank: " << rep.rank_numeric << '\n'
                << "capacity (equal power): " << rep.capacity_equipower << " bit/s/Hz\n"
                << "capacity (waterfilling): " << rep.capacity_waterfilling << " bit/s/Hz\n";
            out.precision(prec);
            return ok;
        }

        // ------------------------------------------------------- grid search

        int grid(const Options &o, std::ostream &out, std::ostream &)
        {
            const auto cfg = load(o, "");
            const auto w = cfg.waveband();
            const auto tx = cfg.transmitter.geometry(w);
            GridSpec spec;
            spec.objective = cfg.grid.objective;
            spec.keep_trace = true;
            GridResult r;
            if (cfg.partition && !cfg.partition->subarrays.empty())
            {
                const auto p = cfg.partition_geometry();
                spec.axes.assign(p.symmetric() ? p.size() / 2 : p.size(), cfg.grid.axis());
                try
                {
                    spec.validate();
                }
                catch (const Error &e)
                {
                    throw ConfigError(std::string("grid: ") + e.what());
                }
                r = grid_search(tx, p, w, spec);
            }
            else
            {
                if (cfg.grid.objective == GridObjective::QuarticSubArray)
                    throw ConfigError("grid.objective: QuarticSubArray needs partition.subarrays");
                spec.axes.assign(cfg.receiver.n2 > 1 ? 2 : 1, cfg.grid.axis());
                try
                {
                    spec.validate();
                }
                catch (const Error &e)
                {
                    throw ConfigError(std::string("grid: ") + e.what());
                }
                r = grid_search(tx, cfg.receiver.geometry(w), w, spec);
            }
            const auto dir = out_dir(o, cfg);
            CsvTable best;
            for (std::size_t a = 0; a < r.best_params.size(); ++a)
                best.columns.push_back("param" + std::to_string(a + 1) + "_lam");
            best.columns.push_back("neff");
            auto row = r.best_params;
            row.push_back(r.best_effective_rank);
            best.add_row(row);
            best.save(dir / "grid_result.csv");
            std::ostringstream trace;
            write_grid_trace_csv(trace, r);
            save_csv(dir, "grid_trace.csv", trace.str());
            if (plots(o, cfg) && r.best_params.size() == 1)
            {
                PlotSeries s{"effective rank", {}, {}};
                for (const auto &p : r.trace)
                {
                    s.x.push_back(p.params_lam[0]);
                    s.y.push_back(p.effective_rank);
                }
                save_text(dir / "grid_trace.svg",
                          line_plot_svg({"Grid search", "spacing [lambda]", "effective rank"}, {s}));
            }
            else if (plots(o, cfg) && r.best_params.size() == 2)
            {
                const auto n = static_cast<Eigen::Index>(spec.axes[0].points());
                const auto m = static_cast<Eigen::Index>(spec.axes[1].points());
                Eigen::MatrixXd map(n, m);
                for (Eigen::Index i = 0; i < n; ++i)
                    for (Eigen::Index j = 0; j < m; ++j)
                        map(i, j) = r.trace[static_cast<std::size_t>(i * m + j)].effective_rank;
                save_text(dir / "grid_trace.svg",
                          heatmap_svg("Effective rank over the grid", map, map.minCoeff(), map.maxCoeff() + 1e-12));
            }
            out << "best effective rank " << format_number(r.best_effective_rank) << " at";
            for (double p : r.best_params)
                out << ' ' << format_number(p);
            out << " lambda (" << r.evaluated << " points)\n";
            return ok;
        }

        // --------------------------------------------------------- reproduce

        int reproduce(const Options &o, std::ostream &out, std::ostream &)
        {
            const auto cfg = load(o, o.experiment);
            ExperimentOutput res;
            if (o.experiment == "fig-elevation")
                res = run_elevation_sweep(cfg);
            else if (o.experiment == "fig-antennas")
                res = run_antenna_sweep(cfg);
            else if (o.experiment == "fig-spacing")
                res = run_spacing_sweep(cfg);
            else if (o.experiment == "fig-ortho")
                res = run_ortho_map(cfg);
            else
                res = run_table2(cfg);
            const auto dir = out_dir(o, cfg);
            res.save(dir, plots(o, cfg));
            for (const auto &[name, table] : res.tables)
                out << (dir / name).string() << " (" << table.rows.size() << " rows)\n";
            return ok;
        }

        void add_common(CLI::App *cmd, Options &o, bool config_required)
        {
            auto *c = cmd->add_option("--config", o.config, "JSON configuration file");
            if (config_required)
                c->required();
            cmd->add_option("--out", o.out, "output directory (overrides output.dir)");
            cmd->add_flag("--plots", o.plots, "also write SVG plots");
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"nfmimo: line-of-sight MIMO array placement", "nfmimo"};
        app.require_subcommand(1);
        Options o;

        auto *design = app.add_subcommand("design", "closed-form receiver designs");
        design->require_subcommand(1);
        std::string design_kind;
        for (const char *kind : {"paraxial", "two-sub", "four-sub", "chain"})
        {
            auto *d = design->add_subcommand(kind, std::string("solve the ") + kind + " design");
            add_common(d, o, true);
            d->callback([&design_kind, kind] { design_kind = kind; });
        }
        auto *eval = app.add_subcommand("evaluate", "exact-channel metrics of a geometry");
        add_common(eval, o, true);
        auto *gs = app.add_subcommand("grid-search", "exhaustive spacing search");
        add_common(gs, o, true);
        auto *rep = app.add_subcommand("reproduce", "regenerate a study");
        rep->add_option("experiment", o.experiment, "fig-elevation | fig-antennas | fig-spacing | fig-ortho | table2")
            ->required()
            ->check(CLI::IsMember(experiment_names()));
        add_common(rep, o, false);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp &e)
        {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError &e)
        {
            app.exit(e, out, err);
            err << app.help();
            return config_error;
        }

        try
        {
            if (*design)
                return design_kind == "paraxial" ? design_paraxial(o, out, err)
                                                 : design_nonparaxial(design_kind, o, out, err);
            if (*eval)
                return evaluate(o, out, err);
            if (*gs)
                return grid(o, out, err);
            return reproduce(o, out, err);
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << '\n';
            return config_error;
        }
        catch (const Error &e)
        {
            err << "error: " << e.what() << '\n';
            return failure;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return failure;
        }
    }
}
