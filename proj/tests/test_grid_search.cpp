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
#include "nfmimo/grid_search.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/paraxial.hpp"
#include "nfmimo/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace nfmimo;
using nfmimo::test::band;
using nfmimo::test::lam;

namespace
{
    GridSpec one_axis(double lo, double hi, double step)
    {
        GridSpec s;
        s.axes = {GridAxis{lo, hi, step}};
        return s;
    }
}

TEST_CASE("grid axes")
{
    CHECK(GridAxis{0.5, 80, 0.25}.points() == 319);
    CHECK(GridAxis{1, 2, 0.3}.points() == 4);
    CHECK(GridAxis{1, 2, 1.0 / 3.0}.points() == 4); // max reached within round-off
    CHECK(GridAxis{}.value(2) == doctest::Approx(1.0));
    GridSpec s;
    s.axes = {GridAxis{}, GridAxis{}};
    CHECK(s.total_points() == 319 * 319);
}

TEST_CASE("degenerate grids are rejected")
{
    CHECK_THROWS_AS(GridSpec{}.validate(), Error);
    CHECK_THROWS_AS(one_axis(2, 1, 0.1).validate(), Error);
    CHECK_THROWS_AS(one_axis(1, 1, 0.1).validate(), Error);
    CHECK_THROWS_AS(one_axis(1, 2, 0.0).validate(), Error);
    CHECK_THROWS_AS(one_axis(0, 2, 0.5).validate(), Error);
    CHECK_THROWS_AS(one_axis(1, 2e7, 1e-2).validate(), Error);
    GridSpec big;
    big.axes = {GridAxis{1, 2000, 1}, GridAxis{1, 2000, 1}};
    CHECK_THROWS_AS(big.validate(), Error);
    const auto tx = ArrayGeometry::linear(4, lam(1));
    const auto rx = ArrayGeometry::linear(8, lam(1), Vec3(0, lam(100), 0));
    GridSpec two;
    two.axes = {GridAxis{1, 2, 0.5}, GridAxis{1, 2, 0.5}};
    CHECK_THROWS_AS(grid_search(tx, rx, band, two), Error);
    const auto p = SubArrayPartition::mirrored({{Vec3(lam(50), lam(100), 0), 2, 1, 1.0, 1.0},
                                                {Vec3(lam(10), lam(100), 0), 2, 1, 1.0, 1.0}});
    CHECK_THROWS_AS(grid_search(tx, p, band, one_axis(1, 2, 0.5)), Error);
}

TEST_CASE("one free spacing finds the paraxial closed form")
{
    const auto tx = ArrayGeometry::linear(16, lam(2));
    const auto rx = ArrayGeometry::linear(48, lam(1), Vec3(0, lam(256), 0));
    const double closed = band.to_lambda(solve_spacings(tx, rx, band).d1_r);
    CHECK(closed == doctest::Approx(8.0 / 3.0));
    const auto r = grid_search(tx, rx, band, one_axis(0.5, 8.0, 0.25));
    CHECK(std::abs(r.best_params[0] - closed) <= 0.25);
    CHECK(r.best_effective_rank <= 16.0 + 1e-9);
}

TEST_CASE("refined grids converge to the closed form in a paraxial link")
{
    // Receiver offsets stay near 5% of the range, transmitter below 1.2%.
    const auto tx = ArrayGeometry::linear(4, lam(8));
    const auto rx = ArrayGeometry::linear(8, lam(1), Vec3(0, lam(1030), 0));
    const auto ends = expand_uniform(rx.with_spacings(lam(16), lam(16)));
    REQUIRE(classify_paraxial(expand_uniform(tx), ends, 0.06) == Deployment::Paraxial);
    const double closed = band.to_lambda(solve_spacings(tx, rx, band).d1_r);
    CHECK(closed == doctest::Approx(1030.0 / 64.0)); // off every grid below
    double prev_best = 0.0;
    for (double step : {0.25, 0.125, 0.0625})
    {
        const auto spec = one_axis(10.0, 22.0, step);
        const auto r = grid_search(tx, rx, band, spec);
        CHECK(r.evaluated == spec.total_points());
        CHECK(std::abs(r.best_params[0] - closed) <= step + 1e-12);
        CHECK(r.best_effective_rank >= prev_best);
        prev_best = r.best_effective_rank;
    }
}

TEST_CASE("halving the step never lowers the optimum")
{
    const ArrayGeometry tx(2, 2, lam(1), lam(1));
    const ArrayGeometry rx(3, 3, 1.0, 1.0, Vec3(lam(10), lam(120), lam(5)), 0.1, 0.0);
    double prev = 0.0;
    for (double step : {1.0, 0.5, 0.25})
    {
        GridSpec s;
        s.axes = {GridAxis{1, 30, step}, GridAxis{1, 30, step}};
        const auto r = grid_search(tx, rx, band, s);
        CHECK(r.best_effective_rank >= prev);
        prev = r.best_effective_rank;
    }
}

TEST_CASE("search is deterministic and traces every point")
{
    const auto tx = ArrayGeometry::linear(8, lam(1));
    const auto rx = ArrayGeometry::linear(16, lam(1), Vec3(lam(20), lam(128), 0));
    auto spec = one_axis(1, 20, 0.5);
    spec.keep_trace = true;
    const auto a = grid_search(tx, rx, band, spec);
    const auto b = grid_search(tx, rx, band, spec);
    CHECK(a.best_params == b.best_params);
    CHECK(a.best_effective_rank == b.best_effective_rank);
    REQUIRE(a.trace.size() == spec.total_points());
    double best = 0.0;
    for (std::size_t k = 0; k < a.trace.size(); ++k)
    {
        CHECK(a.trace[k].params_lam[0] == spec.axes[0].value(k));
        CHECK(a.trace[k].effective_rank == b.trace[k].effective_rank);
        best = std::max(best, a.trace[k].effective_rank);
    }
    CHECK(a.best_effective_rank == best);
    // Ties resolve to the smallest spacing: the first point reaching the maximum.
    for (const auto &p : a.trace)
        if (p.effective_rank >= best - 1e-12)
        {
            CHECK(p.params_lam == a.best_params);
            break;
        }

    std::ostringstream o;
    write_grid_trace_csv(o, a);
    CHECK(o.str().rfind("param1_lam,neff\n1,", 0) == 0);
    const std::string text = o.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(a.trace.size() + 1));
}

TEST_CASE("partition grid dominates the analytic design")
{
    const auto tx = ArrayGeometry::linear(16, lam(1));
    const auto sol = solve_four_subarrays(tx, 12, 12, lam(256), band);
    REQUIRE(sol.feasible);
    const auto p = sol.partition();
    const auto h = exact_channel(expand_uniform(tx), expand_partition(p), band);
    const double analytic = effective_rank(hermitian_eigenvalues(gram(h)));
    GridSpec s;
    const double s1 = band.to_lambda(sol.spacing[0]), s2 = band.to_lambda(sol.spacing[1]);
    s.axes = {GridAxis{s1 - 1.0, s1 + 1.0, 0.25}, GridAxis{s2 - 1.0, s2 + 1.0, 0.25}};
    const auto r = grid_search(tx, p, band, s);
    CHECK(r.best_effective_rank >= analytic - 1e-9);

    SUBCASE("separable tables agree with a direct evaluation")
    {
        const auto q = p.with_spacing(0, lam(r.best_params[0]), lam(r.best_params[0]))
                           .with_spacing(1, lam(r.best_params[1]), lam(r.best_params[1]));
        const auto hq = exact_channel(expand_uniform(tx), expand_partition(q), band);
        CHECK(effective_rank(hermitian_eigenvalues(gram(hq))) == doctest::Approx(r.best_effective_rank).epsilon(1e-9));
    }
}

TEST_CASE("two free spacings on four sub-arrays reach near-full rank")
{
    const auto tx = ArrayGeometry::linear(16, lam(0.5));
    const auto p = solve_four_subarrays(tx, 12, 12, lam(256), band).partition();
    GridSpec s;
    s.axes = {GridAxis{}, GridAxis{}};
    const auto r = grid_search(tx, p, band, s);
    CHECK(r.best_effective_rank >= 15.0);
    CHECK(r.evaluated == s.total_points());
}
