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

#include "checks.hpp"

#include "nfmimo/channel.hpp"
#include "nfmimo/experiments.hpp"
#include "nfmimo/grid_search.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/paraxial.hpp"
#include "nfmimo/spectral.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <vector>

namespace nfmimo::checks
{
    namespace
    {
        // Pinned tolerances.
        constexpr double uniform_rel_tol = 1e-9;
        constexpr double slope_abs_tol = 1e-3;
        constexpr double spacing_abs_tol_lam = 0.05;
        constexpr double neff_target = 15.0;
        constexpr double ortho_limit_db = -10.0;
        constexpr double quartic_phase_tol = 0.05;
        constexpr double quartic_neff_rel_tol = 0.01;
        constexpr double far_field_neff_max = 1.1;
        constexpr double root_tol = 1e-9;
        constexpr double kkt_tol = 1e-9;

        const Waveband band = Waveband::from_ghz(28.0);
        double lam(double m) { return band.from_lambda(m); }

        std::string fmt(double v, int digits = 6)
        {
            std::ostringstream o;
            o.precision(digits);
            o << v;
            return o.str();
        }

        double neff_of(const Eigen::MatrixXcd &h) { return effective_rank(hermitian_eigenvalues(gram(h))); }

        double exact_neff(const ArrayGeometry &tx, const ElementLayout &rx)
        {
            return neff_of(exact_channel(expand_uniform(tx), rx, band).entries);
        }

        ArrayGeometry ula(double dt_lam, int n = 16) { return ArrayGeometry::linear(n, lam(dt_lam)); }

        struct Accumulator
        {
            Outcome out{true, ""};
            void add(bool ok, const std::string &what)
            {
                out.pass = out.pass && ok;
                out.detail += (out.detail.empty() ? "" : "; ") + what + (ok ? "" : " [fail]");
            }
        };
    }

    Outcome uniform_spacings()
    {
        Accumulator acc;
        const auto tmpl = ArrayGeometry::linear(48, lam(1), Vec3(0, lam(256), 0));
        for (auto [dt, want] : {std::pair{0.5, 32.0 / 3.0}, {1.0, 16.0 / 3.0}, {2.0, 8.0 / 3.0}})
        {
            const double got = band.to_lambda(solve_spacings(ula(dt), tmpl, band).d1_r);
            acc.add(std::abs(got / want - 1.0) <= uniform_rel_tol, "dt=" + fmt(dt) + ": " + fmt(got, 10));
        }
        return acc.out;
    }

    Outcome four_subarray_slope()
    {
        Accumulator acc;
        const auto s = solve_four_subarrays(ula(0.5), 12, 12, lam(256), band);
        const double eta = s.eta.empty() ? NAN : s.eta[0];
        const double closed = (1.0 + std::sqrt(41.0)) / 8.0;
        acc.add(std::abs(eta - 0.925) <= slope_abs_tol && std::abs(eta - closed) <= 1e-12,
                "|eta1| = " + fmt(eta, 10) + " vs (1+sqrt41)/8 = " + fmt(closed, 10));
        // Binding sub-array: M1/4 > gamma_2 (L1 - 1). The slope tolerance
        // carries over as 4 (L1 - 1) * 1e-3 on the total.
        const double threshold = s.gamma.size() > 1 ? 4.0 * s.gamma[1] * 15 : NAN;
        acc.add(std::abs(threshold - 25.5) <= 60.0 * slope_abs_tol, "M1 threshold = " + fmt(threshold));
        return acc.out;
    }

    Outcome design3_spacings()
    {
        Accumulator acc;
        const struct
        {
            double dt, r1, r2;
        } rows[] = {{0.5, 58.46, 24.48}, {1.0, 6.30, 5.87}, {2.0, 2.77, 2.72}};
        for (const auto &r : rows)
        {
            const auto s = solve_four_subarrays(ula(r.dt), 12, 12, lam(256), band);
            const double a = s.spacing.size() == 2 ? band.to_lambda(s.spacing[0]) : NAN;
            const double b = s.spacing.size() == 2 ? band.to_lambda(s.spacing[1]) : NAN;
            acc.add(s.feasible && std::abs(a - r.r1) <= spacing_abs_tol_lam && std::abs(b - r.r2) <= spacing_abs_tol_lam,
                    "dt=" + fmt(r.dt) + ": (" + fmt(a) + ", " + fmt(b) + ")");
        }
        return acc.out;
    }

    Outcome design3_rank()
    {
        Accumulator acc;
        for (int m1 : {48, 16})
        {
            const auto d = evaluate_design3({ula(0.5), m1, lam(256), band});
            const bool ok = m1 == 48 ? d.effective_rank >= neff_target : d.effective_rank < neff_target;
            acc.add(ok, "M1=" + std::to_string(m1) + ": N_eff " + fmt(d.effective_rank));
        }
        return acc.out;
    }

    Outcome orthogonality_maps()
    {
        Accumulator acc;
        const LinearLink link{ula(0.5), 48, lam(256), band};
        const DesignEvaluation designs[] = {evaluate_grid_design(link, GridAxis{}, GridObjective::Exact),
                                            evaluate_grid_design(link, GridAxis{}, GridObjective::QuarticSubArray),
                                            evaluate_design3(link)};
        for (const auto &d : designs)
        {
            const double worst = d.ortho_db.size() ? max_off_diagonal(d.ortho_db) : NAN;
            acc.add(worst <= ortho_limit_db, "design " + std::to_string(d.design) + ": " + fmt(worst, 4) + " dB");
        }
        return acc.out;
    }

    Outcome elevation_broadside()
    {
        Accumulator acc;
        const ArrayGeometry tmpl(4, 4, 1.0, 1.0, Vec3(0, lam(256), 0));
        const ArrayGeometry tx2(4, 4, lam(2), lam(2));
        const auto s = solve_spacings(tx2, tmpl, band);
        const double paraxial = exact_neff(tx2, expand_uniform(tmpl.with_spacings(s.d1_r, s.d2_r)));
        acc.add(paraxial >= neff_target, "dt=2: paraxial N_eff " + fmt(paraxial));

        const ArrayGeometry tx05(4, 4, lam(0.5), lam(0.5));
        GridSpec spec;
        spec.axes = {GridAxis{1.0, 300.0, 1.0}, GridAxis{1.0, 300.0, 1.0}};
        const auto g = grid_search(tx05, tmpl, band, spec);
        acc.add(g.best_effective_rank < neff_target,
                "dt=0.5: grid optimum N_eff " + fmt(g.best_effective_rank) + " at (" + fmt(g.best_params[0]) + ", " +
                    fmt(g.best_params[1]) + ")");
        return acc.out;
    }

    Outcome neff_bounds()
    {
        Accumulator acc;
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> dim(1, 20);
        std::normal_distribution<double> n(0.0, 1.0);
        auto random = [&](int r, int c)
        {
            Eigen::MatrixXcd m(r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j)
                    m(i, j) = {n(rng), n(rng)};
            return m;
        };
        int bad = 0;
        for (int t = 0; t < 1000; ++t)
        {
            const int rows = dim(rng), cols = std::min(dim(rng), 16);
            Eigen::MatrixXcd h = random(rows, cols);
            if (t % 4 == 0) // rank-deficient product
            {
                const int k = std::uniform_int_distribution<int>(1, std::min(rows, cols))(rng);
                h = random(rows, k) * random(k, cols);
            }
            const auto ev = hermitian_eigenvalues(gram(h));
            const double ne = effective_rank(ev);
            const int r = numeric_rank(ev);
            if (!(ne >= 1.0 - 1e-12 && ne <= r + 1e-9 && r <= std::min(rows, cols)))
                ++bad;
        }
        acc.add(bad == 0, "1000 random channels, " + std::to_string(bad) + " outside [1, rank]");

        double worst = 0.0;
        for (int l = 1; l <= 16; ++l)
        {
            const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(random(l + 8, l)).householderQ() *
                                       Eigen::MatrixXcd::Identity(l + 8, l);
            worst = std::max(worst, std::abs(neff_of(3.5 * q) - l));
        }
        acc.add(worst <= 1e-9, "orthonormal columns give L within " + fmt(worst, 3));
        return acc.out;
    }

    Outcome quartic_accuracy()
    {
        Accumulator acc;
        struct Case
        {
            ArrayGeometry tx, rx;
        };
        const Case cases[] = {
            {ArrayGeometry(4, 4, lam(2), lam(2)), ArrayGeometry(4, 4, lam(2), lam(2), Vec3(0, lam(256), 0))},
            {ArrayGeometry(4, 4, lam(0.5), lam(0.5)), ArrayGeometry(4, 4, lam(2), lam(2), Vec3(lam(30), lam(250), lam(-20)), 0.2, 0.1)},
            {ArrayGeometry(4, 4, lam(1.5), lam(1.5)), ArrayGeometry(4, 4, lam(1.5), lam(1.5), Vec3(lam(-40), lam(240), lam(60)), -0.3, 0.4)},
        };
        for (const auto &c : cases)
        {
            const auto e = exact_channel(expand_uniform(c.tx), expand_uniform(c.rx), band).entries;
            const auto q = quartic_channel(c.tx, c.rx, band).channel.entries;
            double phase = 0.0;
            for (Eigen::Index i = 0; i < e.size(); ++i)
                phase = std::max(phase, std::abs(std::arg(q(i) / e(i))));
            const double ne = neff_of(e), nq = neff_of(q);
            const double rel = std::abs(nq - ne) / ne;
            acc.add(phase < quartic_phase_tol && rel < quartic_neff_rel_tol,
                    "phase " + fmt(phase, 3) + " rad, N_eff " + fmt(ne) + " vs " + fmt(nq));
        }
        return acc.out;
    }

    Outcome far_field()
    {
        Accumulator acc;
        const ArrayGeometry tx(4, 4, lam(0.5), lam(0.5));
        const ArrayGeometry rx(4, 4, lam(0.5), lam(0.5), Vec3(0, lam(1e6), 0));
        const double ne = exact_neff(tx, expand_uniform(rx));
        acc.add(ne <= far_field_neff_max, "N_eff at 1e6 wavelengths " + fmt(ne, 8));
        return acc.out;
    }

    Outcome cubic_roots()
    {
        Accumulator acc;
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> cnt(1, 40);
        std::uniform_real_distribution<double> pitch(0.3, 3.0);
        double gap = 0.0, residual = 0.0, back = 0.0;
        int mismatched = 0, solved = 0;
        for (int i = 0; i < 100; ++i)
        {
            const double dt = pitch(rng), s = 2.0 * dt;
            const int a = cnt(rng), c = cnt(rng);
            const auto co = four_subarray_cubic(a, c, s * s);
            const auto poly = [&](double x) { return ((co[0] * x + co[1]) * x + co[2]) * x + co[3]; };
            const double scale = std::abs(co[0]) + std::abs(co[1]) + std::abs(co[2]) + std::abs(co[3]);
            const auto roots = cardano_roots(co);
            const auto scan = bracketed_roots(poly, -10.0, 10.0, 20000);
            if (roots.size() != scan.size())
            {
                ++mismatched;
                continue;
            }
            for (std::size_t k = 0; k < roots.size(); ++k)
            {
                gap = std::max(gap, std::abs(roots[k] - scan[k]));
                residual = std::max(residual, std::abs(poly(roots[k])) / scale);
            }
            const auto sol = solve_four_subarrays(ula(dt), a, c, lam(256), band);
            if (sol.feasible)
            {
                ++solved;
                back = std::max(back, defining_equation_residual(sol, band));
                back = std::max(back, std::abs(poly(sol.eta[0])) / scale);
            }
        }
        acc.add(mismatched == 0 && gap < root_tol,
                "100 cubics, root gap " + fmt(gap, 3) + ", " + std::to_string(mismatched) + " count mismatches");
        acc.add(residual < root_tol, "cubic residual " + fmt(residual, 3));
        acc.add(solved > 0 && back < root_tol,
                std::to_string(solved) + " feasible designs, back-substitution " + fmt(back, 3));
        return acc.out;
    }

    Outcome grid_refinement()
    {
        Accumulator acc;
        // Paraxial link: receiver offsets stay near 5% of the range.
        const auto tx = ula(8.0, 4);
        const auto rx = ArrayGeometry::linear(8, lam(1), Vec3(0, lam(1030), 0));
        const double closed = band.to_lambda(solve_spacings(tx, rx, band).d1_r);
        double prev = 0.0;
        for (double step : {0.25, 0.125, 0.0625})
        {
            GridSpec spec;
            spec.axes = {GridAxis{10.0, 22.0, step}};
            const auto r = grid_search(tx, rx, band, spec);
            const double off = std::abs(r.best_params[0] - closed);
            acc.add(r.best_effective_rank >= prev && off <= step + 1e-12,
                    "step " + fmt(step) + ": argmax off by " + fmt(off, 3) + ", N_eff " + fmt(r.best_effective_rank, 10));
            prev = r.best_effective_rank;
        }
        return acc.out;
    }

    Outcome waterfilling()
    {
        Accumulator acc;
        std::mt19937_64 rng(31);
        std::uniform_int_distribution<int> dim(1, 16);
        std::normal_distribution<double> logv(0.0, 3.0);
        std::uniform_real_distribution<double> logp(-3.0, 3.0);
        double kkt = 0.0, deficit = 0.0;
        for (int t = 0; t < 500; ++t)
        {
            std::vector<double> ev(dim(rng));
            for (double &v : ev)
                v = std::exp(logv(rng));
            const double sigma2 = std::pow(10.0, logp(rng)), total = std::pow(10.0, logp(rng));
            const auto wf = allocate_power(ev, sigma2, total, PowerPolicy::Waterfilling);
            const double mu = wf.water_level;
            double sum = 0.0;
            for (std::size_t i = 0; i < ev.size(); ++i)
            {
                const double p = wf.powers[i], floor = sigma2 / ev[i];
                sum += p;
                if (p < 0.0)
                    kkt = std::max(kkt, -p / total);
                else if (p > 0.0)
                    kkt = std::max(kkt, std::abs(p + floor - mu) / mu);
                else
                    kkt = std::max(kkt, std::max(0.0, mu - floor) / mu);
            }
            kkt = std::max(kkt, std::abs(sum - total) / total);
            const double cw = capacity(ev, sigma2, total, PowerPolicy::Waterfilling);
            const double ce = capacity(ev, sigma2, total, PowerPolicy::Equipower);
            deficit = std::max(deficit, ce - cw);
        }
        acc.add(kkt < kkt_tol, "500 spectra, KKT violation " + fmt(kkt, 3));
        acc.add(deficit <= 1e-12, "largest equipower excess " + fmt(deficit, 3) + " bit/s/Hz");
        return acc.out;
    }
}
