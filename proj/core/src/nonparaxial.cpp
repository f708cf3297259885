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

#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/dirichlet.hpp"
#include "nfmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace nfmimo
{
    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        void require_linear(const ArrayGeometry &tx, const char *what)
        {
            if (tx.n2() != 1)
                throw Error(std::string(what) + ": the transmitter must be a linear array (n2 = 1)");
        }

        void require_positive(double y_o, const char *what)
        {
            if (!(y_o > 0.0) || !std::isfinite(y_o))
                throw Error(std::string(what) + ": y_o must be positive and finite");
        }

        int min_count(double gamma, int l1)
        {
            if (!std::isfinite(gamma))
                return std::numeric_limits<int>::max();
            return static_cast<int>(std::ceil(gamma * (l1 - 1) + 1e-9));
        }

        // Normalized phase-slope bound s = 2 d^t / lambda; |eta| < s always.
        double slope_bound(const ArrayGeometry &tx, const Waveband &w) { return 2.0 * tx.d1() / w.wavelength(); }

        // Fills centers, spacings and counts from (eta, gamma) per pair and
        // evaluates the admissibility conditions shared by every design.
        NonParaxialSolution finish(const ArrayGeometry &tx, std::vector<int> counts, std::vector<double> eta,
                                   std::vector<double> gamma, double y_o, const Waveband &w,
                                   std::vector<std::string> diagnostics)
        {
            NonParaxialSolution s;
            s.counts = std::move(counts);
            s.eta = std::move(eta);
            s.gamma = std::move(gamma);
            s.y_o = y_o;
            s.delta_t = tx.d1();
            s.l1 = tx.n1();
            s.diagnostics = std::move(diagnostics);

            const double lam = w.wavelength();
            const double sb = slope_bound(tx, w);
            const std::size_t k = s.eta.size();
            s.x_center.assign(k, nan);
            s.spacing.assign(k, nan);
            s.min_counts.assign(k, 0);
            for (std::size_t i = 0; i < k; ++i)
            {
                const double e = s.eta[i], g = s.gamma[i];
                s.min_counts[i] = min_count(g, s.l1);
                std::ostringstream why;
                if (!(e > 0.0 && e < sb))
                {
                    why << "sub-array " << i + 1 << ": |eta| = " << e << " outside (0, " << sb << ")";
                    s.diagnostics.push_back(why.str());
                    continue;
                }
                if (!(g > 0.0))
                {
                    why << "sub-array " << i + 1 << ": gamma = " << g << " is not positive";
                    s.diagnostics.push_back(why.str());
                    continue;
                }
                const double x = e * lam * y_o / std::sqrt(std::pow(2.0 * s.delta_t, 2) - std::pow(e * lam, 2));
                const double c = std::hypot(x, y_o);
                const double tau = 1.0 - x * x / (c * c);
                s.x_center[i] = x;
                s.spacing[i] = g * lam * c / (tau * s.counts[i] * s.delta_t);
                if (s.counts[i] < s.min_counts[i])
                {
                    why << "sub-array " << i + 1 << ": M1 = " << s.counts[i] << " below the minimum "
                        << s.min_counts[i] << " = ceil(gamma (L1 - 1))";
                    s.diagnostics.push_back(why.str());
                }
            }
            if (s.total_count() < s.l1)
                s.diagnostics.push_back("total receive count " + std::to_string(s.total_count()) + " below L1 = " +
                                        std::to_string(s.l1));
            s.feasible = s.diagnostics.empty();
            return s;
        }

        // Shooting formulation of the pair chain. With w(eta) the projection
        // weight (1 - (eta/s)^2 for the full model, 1 in the paraxial limit),
        // the link conditions keep kappa = M_i w_i / gamma_i fixed and chain the
        // zeros as eta_{i+1} + gamma_{i+1} = eta_i - gamma_i. Starting from
        // gamma_1 = 1 - eta_1, the last pair must satisfy gamma_K = eta_K.
        struct Chain
        {
            std::vector<int> m; // one count per pair
            double b;           // s^2
            bool limit;         // w == 1

            double weight(double e) const { return limit ? 1.0 : 1.0 - e * e / b; }

            // Returns false when the chain leaves the admissible region.
            bool propagate(double e1, std::vector<double> &eta, std::vector<double> &gamma) const
            {
                const std::size_t k = m.size();
                eta.assign(k, nan);
                gamma.assign(k, nan);
                eta[0] = e1;
                gamma[0] = 1.0 - e1;
                if (!(gamma[0] > 0.0) || !(weight(e1) > 0.0))
                    return false;
                const double kappa = m[0] * weight(e1) / gamma[0];
                for (std::size_t i = 1; i < k; ++i)
                {
                    const double r = eta[i - 1] - gamma[i - 1];
                    const double mk = m[i] / kappa;
                    double e;
                    if (limit)
                        e = r - mk;
                    else
                    {
                        // (mk / b) e^2 - e - (mk - r) = 0, smaller root.
                        const double a = mk / b, c = mk - r;
                        const double disc = 1.0 + 4.0 * a * c;
                        if (disc < 0.0)
                            return false;
                        e = -2.0 * c / (1.0 + std::sqrt(disc));
                    }
                    eta[i] = e;
                    gamma[i] = mk * weight(e);
                    if (!(e > 0.0) || !(gamma[i] > 0.0))
                        return false;
                }
                return true;
            }

            double mismatch(double e1) const
            {
                std::vector<double> eta, gamma;
                if (!propagate(e1, eta, gamma))
                    return nan;
                return gamma.back() - eta.back();
            }
        };

        struct ChainRoot
        {
            std::vector<double> eta, gamma;
            bool found = false;
            bool unique = true;
        };

        ChainRoot solve_chain_pairs(const std::vector<int> &m, double sb, bool limit)
        {
            Chain chain{m, sb * sb, limit};
            ChainRoot out;
            if (m.size() == 1)
            {
                out.eta = {0.5};
                out.gamma = {0.5};
                out.found = true;
                return out;
            }
            const double hi = std::min(1.0, sb);
            auto roots = bracketed_roots([&](double e) { return chain.mismatch(e); }, 0.0, hi);
            if (roots.empty())
                return out;
            out.unique = roots.size() == 1;
            // The outer pair sits farthest out; prefer the largest admissible eta_1.
            out.found = chain.propagate(roots.back(), out.eta, out.gamma);
            return out;
        }

        std::vector<int> half_counts(const std::vector<int> &counts, const char *what)
        {
            if (counts.empty() || counts.size() % 2 != 0)
                throw Error(std::string(what) + ": an even, non-zero number of sub-arrays is required");
            const std::size_t k = counts.size() / 2;
            for (std::size_t i = 0; i < counts.size(); ++i)
                if (counts[i] < 1)
                    throw Error(std::string(what) + ": sub-array counts must be >= 1");
            for (std::size_t i = 0; i < k; ++i)
                if (counts[i] != counts[counts.size() - 1 - i])
                    throw Error(std::string(what) + ": counts must be mirror-symmetric");
            return {counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(k)};
        }

        double polyval(const std::array<double, 4> &c, double x) { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; }
        double polyder(const std::array<double, 4> &c, double x) { return (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2]; }

        double newton_polish(const std::array<double, 4> &c, double x)
        {
            for (int it = 0; it < 4; ++it)
            {
                const double d = polyder(c, x);
                if (d == 0.0)
                    break;
                const double nx = x - polyval(c, x) / d;
                if (!std::isfinite(nx) || std::abs(polyval(c, nx)) >= std::abs(polyval(c, x)))
                    break;
                x = nx;
            }
            return x;
        }

        bool cardano_marginal(const std::array<double, 4> &c)
        {
            const double a = c[1] / c[0], b = c[2] / c[0], d = c[3] / c[0];
            const double p = b - a * a / 3.0;
            const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
            const double t1 = q * q / 4.0, t2 = p * p * p / 27.0;
            const double scale = std::max({t1, std::abs(t2), std::numeric_limits<double>::min()});
            return std::abs(t1 + t2) < 1e-12 * scale;
        }
    }

    // ----------------------------------------------------------------- residual

    EtaGamma compute_eta_gamma(const ArrayGeometry &tx, const SubArrayPartition &p, const Waveband &w)
    {
        const Vec3 et[2] = {tx.first_axis(), tx.second_axis()};
        const double dt[2] = {tx.d1(), tx.d2()};
        const double lam = w.wavelength();
        EtaGamma out;
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            const auto g = p.subarray_geometry(i);
            const Vec3 c = g.center() - tx.center();
            const double dist = c.norm();
            if (!(dist > 0.0))
                throw Error("compute_eta_gamma: a sub-array center coincides with the transmitter center");
            const Vec3 ch = c / dist;
            const Vec3 er[2] = {g.first_axis(), g.second_axis()};
            const double m[2] = {double(g.n1()), double(g.n2())};
            const double dr[2] = {g.d1(), g.d2()};
            Eigen::Matrix2d gam;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                {
                    const double tau = er[a].dot(et[b]) - ch.dot(er[a]) * ch.dot(et[b]);
                    gam(a, b) = tau * m[a] * dr[a] * dt[b] / (lam * dist);
                }
            out.eta_x.push_back(2.0 * c.dot(et[0]) * dt[0] / (lam * dist));
            out.eta_z.push_back(2.0 * c.dot(et[1]) * dt[1] / (lam * dist));
            out.gamma.push_back(gam);
            out.distance.push_back(dist);
        }
        return out;
    }

    double nonparaxial_orthogonality_residual(const ArrayGeometry &tx, const SubArrayPartition &p,
                                              const Waveband &w)
    {
        const auto eg = compute_eta_gamma(tx, p, w);
        double norm = 0.0;
        std::vector<double> weight(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            weight[i] = 1.0 / (eg.distance[i] * eg.distance[i]);
            norm += weight[i] * p[i].n1 * p[i].n2;
        }
        double worst = 0.0;
        const int l1 = tx.n1(), l2 = tx.n2();
        for (int du1 = -(l1 - 1); du1 <= l1 - 1; ++du1)
            for (int du2 = -(l2 - 1); du2 <= l2 - 1; ++du2)
            {
                if (du1 == 0 && du2 == 0)
                    continue;
                std::complex<double> acc = 0.0;
                for (std::size_t i = 0; i < p.size(); ++i)
                {
                    const auto &g = eg.gamma[i];
                    const double d1 = dirichlet_ratio(g(0, 0) * du1 + g(0, 1) * du2, p[i].n1);
                    const double d2 = dirichlet_ratio(g(1, 0) * du1 + g(1, 1) * du2, p[i].n2);
                    acc += weight[i] * d1 * d2 * std::polar(1.0, pi * (eg.eta_x[i] * du1 + eg.eta_z[i] * du2));
                }
                worst = std::max(worst, std::abs(acc) / norm);
            }
        return worst;
    }

    // ------------------------------------------------------------- root finding

    std::array<double, 4> four_subarray_cubic(int m11, int m12, double b)
    {
        const double a = m11, c = m12;
        return {2.0 * a + 2.0 * c, -a - 4.0 * c, -2.0 * b * a + 2.0 * c * (1.25 - b), b * a + 2.0 * c * (b - 0.25)};
    }

    std::vector<double> cardano_roots(const std::array<double, 4> &c)
    {
        if (c[0] == 0.0)
            throw Error("cardano_roots: leading coefficient is zero");
        const double a = c[1] / c[0], b = c[2] / c[0], d = c[3] / c[0];
        const double p = b - a * a / 3.0;
        const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
        const double disc = q * q / 4.0 + p * p * p / 27.0;
        const double shift = -a / 3.0;

        std::vector<double> roots;
        if (cardano_marginal(c))
        {
            const double u = std::cbrt(-q / 2.0);
            roots = {2.0 * u + shift, -u + shift};
        }
        else if (disc > 0.0)
        {
            const double sq = std::sqrt(disc);
            roots = {std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) + shift};
        }
        else
        {
            const double r = std::sqrt(-p / 3.0);
            const double arg = std::clamp(-q / (2.0 * r * r * r), -1.0, 1.0);
            const double phi = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                roots.push_back(2.0 * r * std::cos((phi + 2.0 * pi * k) / 3.0) + shift);
        }
        for (auto &x : roots)
            x = newton_polish(c, x);
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    double bisect(const std::function<double(double)> &f, double lo, double hi, double tol)
    {
        double flo = f(lo), fhi = f(hi);
        if (!(std::isfinite(flo) && std::isfinite(fhi)) || (flo > 0.0) == (fhi > 0.0))
        {
            if (flo == 0.0)
                return lo;
            if (fhi == 0.0)
                return hi;
            throw Error("bisect: the bracket does not enclose a sign change");
        }
        for (int it = 0; it < 200 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0)
                return mid;
            if (!std::isfinite(fm))
                throw Error("bisect: function undefined inside the bracket");
            if ((fm > 0.0) == (flo > 0.0))
            {
                lo = mid;
                flo = fm;
            }
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    std::vector<double> bracketed_roots(const std::function<double(double)> &f, double lo, double hi, int samples)
    {
        std::vector<double> roots;
        if (!(hi > lo) || samples < 2)
            return roots;
        const double h = (hi - lo) / samples;
        double x0 = lo + 0.5 * h, f0 = f(x0);
        for (int k = 1; k < samples; ++k)
        {
            const double x1 = lo + (k + 0.5) * h, f1 = f(x1);
            if (std::isfinite(f0) && std::isfinite(f1))
            {
                if (f0 == 0.0)
                    roots.push_back(x0);
                else if ((f0 > 0.0) != (f1 > 0.0) && f1 != 0.0)
                {
                    try
                    {
                        roots.push_back(bisect(f, x0, x1));
                    }
                    catch (const Error &)
                    {
                        // Undefined somewhere in the cell; not a genuine crossing.
                    }
                }
            }
            x0 = x1;
            f0 = f1;
        }
        if (std::isfinite(f0) && f0 == 0.0)
            roots.push_back(x0);
        return roots;
    }

    // ------------------------------------------------------------------ solvers

    int NonParaxialSolution::total_count() const { return 2 * std::accumulate(counts.begin(), counts.end(), 0); }

    SubArrayPartition NonParaxialSolution::partition() const
    {
        std::vector<SubArraySpec> half;
        for (std::size_t i = 0; i < pairs(); ++i)
        {
            if (!(std::isfinite(x_center[i]) && spacing[i] > 0.0 && std::isfinite(spacing[i])))
                throw Error("NonParaxialSolution: sub-array " + std::to_string(i + 1) + " has no defined geometry");
            half.push_back({Vec3(x_center[i], y_o, 0.0), counts[i], 1, spacing[i], spacing[i]});
        }
        return SubArrayPartition::mirrored(half);
    }

    NonParaxialSolution solve_two_subarrays(const ArrayGeometry &tx, int m1, double y_o, const Waveband &w)
    {
        require_linear(tx, "solve_two_subarrays");
        require_positive(y_o, "solve_two_subarrays");
        if (m1 < 2)
            throw Error("solve_two_subarrays: M1 must be >= 2");
        std::vector<std::string> diag;
        if (m1 % 2 != 0)
            diag.push_back("M1 = " + std::to_string(m1) + " is odd; two mirror sub-arrays need an even count");
        if (!(4.0 * tx.d1() > w.wavelength()))
            diag.push_back("4 d^t <= lambda: the center-point formula has no real solution");
        if (m1 < tx.n1())
            diag.push_back("M1 = " + std::to_string(m1) + " below L1 = " + std::to_string(tx.n1()));
        auto s = finish(tx, {m1 / 2}, {0.5}, {0.5}, y_o, w, diag);
        if (!diag.empty())
            s.feasible = false;
        return s;
    }

    NonParaxialSolution solve_four_subarrays(const ArrayGeometry &tx, int m11, int m12, double y_o,
                                             const Waveband &w)
    {
        require_linear(tx, "solve_four_subarrays");
        require_positive(y_o, "solve_four_subarrays");
        if (m11 < 1 || m12 < 1)
            throw Error("solve_four_subarrays: sub-array counts must be >= 1");

        const double sb = slope_bound(tx, w);
        const double b = sb * sb;
        const double hi = std::min(1.0, sb);
        const auto coeff = four_subarray_cubic(m11, m12, b);
        std::vector<std::string> diag;
        std::vector<double> admissible;
        bool unique = true;

        const bool half_wave = std::abs(b - 1.0) <= 1e-12;
        if (half_wave)
        {
            // e = 1 always solves the cubic here but places the outer pair at
            // gamma = 0; the remaining quadratic carries the design root.
            const double mt = 2.0 * m11 + 2.0 * m12;
            const double e = (2.0 * m12 - m11) / (2.0 * mt) +
                             std::sqrt(9.0 * m11 * m11 + 16.0 * m11 * m12 + 16.0 * double(m12) * m12) / (2.0 * mt);
            if (!(3 * m12 < 4 * m11))
                diag.push_back("3 M1^2 >= 4 M1^1 (" + std::to_string(3 * m12) + " >= " + std::to_string(4 * m11) +
                               "): no admissible root at d^t = lambda/2");
            if (e > 0.5 && e < hi)
                admissible.push_back(e);
        }
        else
        {
            std::vector<double> roots = cardano_roots(coeff);
            if (cardano_marginal(coeff))
                roots = bracketed_roots([&](double x) { return polyval(coeff, x); }, 0.0, sb);
            int in_range = 0;
            for (double r : roots)
            {
                if (r > 0.0 && r < sb)
                    ++in_range;
                if (r > 0.5 && r < hi)
                    admissible.push_back(r);
            }
            unique = in_range <= 1;
        }

        if (admissible.empty())
        {
            diag.push_back("no root of the four-sub-array equation in (1/2, " + std::to_string(hi) + ")");
            auto s = finish(tx, {m11, m12}, {nan, nan}, {nan, nan}, y_o, w, diag);
            s.feasible = false;
            return s;
        }
        const double e1 = admissible.back();
        const double e2 = e1 - 0.5;
        auto s = finish(tx, {m11, m12}, {e1, e2}, {1.0 - e1, e2}, y_o, w, diag);
        s.unique = unique && admissible.size() == 1;
        if (!diag.empty())
            s.feasible = false;
        return s;
    }

    NonParaxialSolution solve_chain(const ArrayGeometry &tx, const std::vector<int> &counts, double y_o,
                                    const Waveband &w)
    {
        require_linear(tx, "solve_chain");
        require_positive(y_o, "solve_chain");
        const auto m = half_counts(counts, "solve_chain");
        const auto root = solve_chain_pairs(m, slope_bound(tx, w), false);
        if (!root.found)
        {
            auto s = finish(tx, m, std::vector<double>(m.size(), nan), std::vector<double>(m.size(), nan), y_o, w,
                            {"chain equations have no admissible solution"});
            s.feasible = false;
            return s;
        }
        auto s = finish(tx, m, root.eta, root.gamma, y_o, w, {});
        s.unique = root.unique;
        return s;
    }

    double defining_equation_residual(const NonParaxialSolution &s, const Waveband &w)
    {
        const std::size_t k = s.pairs();
        if (k == 0)
            return 0.0;
        const double lam = w.wavelength();
        const double sb = 2.0 * s.delta_t / lam;
        double worst = 0.0;
        auto note = [&](double v, double scale) { worst = std::max(worst, std::abs(v) / std::max(scale, 1e-300)); };

        note(s.gamma[0] + s.eta[0] - 1.0, 1.0);
        note(s.gamma[k - 1] - s.eta[k - 1], std::max(s.gamma[k - 1], s.eta[k - 1]));
        auto kappa = [&](std::size_t i) { return s.counts[i] * (1.0 - std::pow(s.eta[i] / sb, 2)) / s.gamma[i]; };
        for (std::size_t i = 0; i + 1 < k; ++i)
        {
            note(s.eta[i + 1] + s.gamma[i + 1] - (s.eta[i] - s.gamma[i]), std::max(s.eta[i], 1.0));
            note(kappa(i + 1) - kappa(i), std::abs(kappa(i)));
        }
        for (std::size_t i = 0; i < k; ++i)
        {
            const double c = std::hypot(s.x_center[i], s.y_o);
            const double tau = 1.0 - std::pow(s.x_center[i] / c, 2);
            note(s.eta[i] - 2.0 * s.x_center[i] * s.delta_t / (lam * c), s.eta[i]);
            note(s.spacing[i] - s.gamma[i] * lam * c / (tau * s.counts[i] * s.delta_t), s.spacing[i]);
        }
        return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
    }

    ParaxialLimitReport paraxial_limit_check(const NonParaxialSolution &s, const Waveband &w)
    {
        const std::size_t k = s.pairs();
        if (k == 0)
            throw Error("paraxial_limit_check: empty solution");
        const double lam = w.wavelength();
        const double sb = 2.0 * s.delta_t / lam;
        const int mt = s.total_count();

        ParaxialLimitReport r;
        r.paraxial_spacing = lam * s.y_o / (mt * s.delta_t);
        const auto lim = solve_chain_pairs(s.counts, sb, true);
        int outer = 0;
        for (std::size_t i = 0; i < k; ++i)
        {
            const double ls = lim.found ? lim.gamma[i] * lam * s.y_o / (s.counts[i] * s.delta_t) : nan;
            const double lc = lim.found ? lim.eta[i] * lam * s.y_o / (2.0 * s.delta_t) : nan;
            r.solved_spacing.push_back(s.spacing[i]);
            r.limit_spacing.push_back(ls);
            r.limit_center.push_back(lc);
            r.uniform_center.push_back((0.5 * mt - outer - 0.5 * s.counts[i]) * r.paraxial_spacing);
            outer += s.counts[i];
            r.solved_deviation.push_back(std::abs(s.spacing[i] / r.paraxial_spacing - 1.0));
            r.limit_deviation.push_back(std::abs(ls / r.paraxial_spacing - 1.0));
            r.max_solved_deviation = std::max(r.max_solved_deviation, r.solved_deviation.back());
            r.max_limit_deviation = std::max(r.max_limit_deviation, r.limit_deviation.back());
        }
        return r;
    }

    void write_nonparaxial_csv_header(std::ostream &out)
    {
        out << "Nr,i,M1_i,x_center_lam,delta_r_lam,eta,gamma,feasible,min_count\n";
    }

    void write_nonparaxial_csv_rows(std::ostream &out, const NonParaxialSolution &s, const Waveband &w)
    {
        const auto prec = out.precision(17);
        const std::size_t k = s.pairs();
        const std::size_t nr = 2 * k;
        for (std::size_t row = 0; row < nr; ++row)
        {
            const std::size_t i = row < k ? row : nr - 1 - row;
            const double sign = row < k ? 1.0 : -1.0;
            out << nr << ',' << row + 1 << ',' << s.counts[i] << ',' << sign * w.to_lambda(s.x_center[i]) << ','
                << w.to_lambda(s.spacing[i]) << ',' << s.eta[i] << ',' << s.gamma[i] << ',' << (s.feasible ? 1 : 0)
                << ',' << s.min_counts[i] << '\n';
        }
        out.precision(prec);
    }
}
