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

#include "support.hpp"

#include "nfmimo/channel.hpp"
#include "nfmimo/error.hpp"
#include "nfmimo/experiments.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace nfmimo;
using nfmimo::test::band;
using nfmimo::test::lam;

namespace
{
    LinearLink link(double dt_lam, int m1 = 48) { return {ArrayGeometry::linear(16, lam(dt_lam)), m1, lam(256), band}; }

    // Small, fast variant of a built-in scenario.
    ExperimentConfig quick(const std::string &name, std::vector<Strategy> strategies)
    {
        auto c = default_experiment(name);
        c.strategies = std::move(strategies);
        c.grid = {1.0, 80.0, 2.0, GridObjective::Exact};
        return c;
    }
}

TEST_CASE("design evaluations")
{
    SUBCASE("uniform paraxial design")
    {
        const auto d = evaluate_design4(link(2.0));
        CHECK(d.design == 4);
        CHECK(d.feasible);
        CHECK(d.spacings_lam[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
        CHECK(d.effective_rank > 15.0);
        CHECK(d.centers_lam.empty());
    }
    SUBCASE("closed-form sub-array design")
    {
        const auto d = evaluate_design3(link(0.5));
        CHECK(d.design == 3);
        CHECK(d.feasible);
        REQUIRE(d.spacings_lam.size() == 2);
        CHECK(std::abs(d.spacings_lam[0] - 58.46) < 0.05);
        CHECK(std::abs(d.centers_lam[0] - 625.04) < 0.01);
        CHECK(d.effective_rank >= 15.0);
    }
    SUBCASE("counts that do not split four ways")
    {
        const auto d = evaluate_design3(link(0.5, 50));
        CHECK_FALSE(d.feasible);
        CHECK(std::isnan(d.effective_rank));
        CHECK_FALSE(d.diagnostics.empty());
    }
    SUBCASE("too few receive elements")
    {
        const auto d = evaluate_design3(link(0.5, 16));
        CHECK_FALSE(d.feasible);
        CHECK(d.effective_rank < 15.0);
    }
    SUBCASE("grid designs keep the closed-form centers")
    {
        const auto d = evaluate_grid_design(link(1.0), GridAxis{1.0, 12.0, 0.5}, GridObjective::Exact);
        const auto d3 = evaluate_design3(link(1.0));
        CHECK(d.design == 1);
        CHECK(d.centers_lam == d3.centers_lam);
        CHECK(d.effective_rank >= 15.0);
        const auto d2 = evaluate_grid_design(link(1.0), GridAxis{1.0, 12.0, 0.5}, GridObjective::QuarticSubArray);
        CHECK(d2.design == 2);
        CHECK(d2.spacings_lam.size() == 2);
    }
}

TEST_CASE("orthogonality map matches a direct recomputation")
{
    const auto d = evaluate_design3(link(0.5));
    const auto tx = ArrayGeometry::linear(16, lam(0.5));
    const auto p = solve_four_subarrays(tx, 12, 12, lam(256), band).partition();
    const auto g = gram(exact_channel(expand_uniform(tx), expand_partition(p), band));
    REQUIRE(d.ortho_db.rows() == 16);
    for (int u = 0; u < 16; ++u)
    {
        CHECK(d.ortho_db(u, u) == doctest::Approx(0.0));
        for (int v = 0; v < 16; ++v)
        {
            const double want = 20.0 * std::log10(std::abs(g(u, v)) / std::sqrt(g(u, u).real() * g(v, v).real()));
            CHECK(d.ortho_db(u, v) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    CHECK(max_off_diagonal(d.ortho_db) <= -10.0);
}

TEST_CASE("elevation sweep")
{
    auto c = default_experiment("fig-elevation");
    c.sweep.values = {0.0, 30.0};
    c.delta_t_lam = {0.5, 2.0};
    c.grid = {2.0, 300.0, 4.0, GridObjective::Exact};
    const auto out = run_elevation_sweep(c);
    const auto &t = out.tables.at("fig_elevation.csv");
    CHECK(t.columns.size() == 8);
    REQUIRE(t.rows.size() == 4);
    // Rows run over transmit spacing, then elevation.
    CHECK(t.rows[0][0] == 0.0);
    CHECK(t.rows[0][1] == 0.5);
    CHECK(t.rows[0][7] < 15.0);
    CHECK(t.rows[2][1] == 2.0);
    CHECK(t.rows[2][4] >= 15.0);
    CHECK(t.rows[2][2] == doctest::Approx(256.0 / 8.0));
    CHECK(out.plots.count("fig_elevation.svg") == 1);

    c.sweep.variable = SweepVariable::M1;
    CHECK_THROWS_AS(run_elevation_sweep(c), ConfigError);
}

TEST_CASE("antenna sweep")
{
    auto c = quick("fig-antennas", {Strategy::FourSub, Strategy::Paraxial});
    c.sweep.values = {16, 48};
    const auto out = run_antenna_sweep(c);
    const auto &t = out.tables.at("fig_antennas.csv");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.column("design3_feasible") == std::vector<double>{0.0, 1.0});
    CHECK(t.column("threshold_m1")[0] == doctest::Approx(25.5).epsilon(1e-3));
    CHECK(t.column("neff_design3")[1] >= 15.0);
    CHECK(t.column("neff_design3")[0] < 15.0);
    CHECK(std::isnan(t.column("neff_design1")[0]));
}

TEST_CASE("spacing sweep and design table")
{
    auto c = quick("fig-spacing", {Strategy::FourSub, Strategy::Paraxial});
    c.sweep.values = {0.5, 2.0};
    const auto out = run_spacing_sweep(c);
    CHECK(out.tables.at("fig_spacing.csv").rows.size() == 2);
    const auto &t2 = out.tables.at("table2.csv");
    CHECK(t2.columns == std::vector<std::string>{"delta_t_lam", "design", "delta_r1_lam", "delta_r2_lam", "neff",
                                                  "feasible"});
    CHECK(t2.rows.size() == 6);

    const auto table = run_table2(quick("table2", {Strategy::FourSub, Strategy::Paraxial}));
    CHECK(table.tables.at("table2.csv").rows == t2.rows);
}

TEST_CASE("orthogonality maps")
{
    const auto out = run_ortho_map(quick("fig-ortho", {Strategy::FourSub, Strategy::Grid1}));
    CHECK(out.tables.count("ortho_design1.csv") == 1);
    CHECK(out.tables.count("ortho_design3.csv") == 1);
    const auto &s = out.tables.at("ortho_summary.csv");
    REQUIRE(s.rows.size() == 2);
    for (const auto &row : s.rows)
        CHECK(row[1] <= -10.0);
    const auto &m = out.tables.at("ortho_design3.csv");
    CHECK(m.columns.size() == 17);
    CHECK(m.rows.size() == 16);

    const auto dir = test::scratch_dir("ortho");
    out.save(dir, false);
    CHECK(std::filesystem::exists(dir / "ortho_summary.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "ortho_design3.svg"));
    out.save(dir, true);
    CHECK(std::filesystem::exists(dir / "ortho_design3.svg"));
    CHECK(CsvTable::load(dir / "ortho_summary.csv").rows == s.rows);
}

TEST_CASE("unknown scenario")
{
    CHECK_THROWS_AS(default_experiment("fig-nothing"), ConfigError);
    CHECK(experiment_names().size() == 5);
}
