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

#include "nfmimo/grid_search.hpp"
#include "nfmimo/channel.hpp"
#include "nfmimo/error.hpp"
#include "nfmimo/parallel.hpp"
#include "nfmimo/spectral.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

namespace nfmimo
{
    std::size_t GridAxis::points() const
    {
        if (!(step_lam > 0.0) || !(max_lam > min_lam))
            return 0;
        return static_cast<std::size_t>(std::floor((max_lam - min_lam) / step_lam + 1e-9)) + 1;
    }

    const char *to_string(GridObjective o) { return o == GridObjective::Exact ? "Exact" : "QuarticSubArray"; }

    void GridSpec::validate() const
    {
        if (axes.empty() || axes.size() > 3)
            throw Error("grid: between one and three axes are required");
        for (std::size_t a = 0; a < axes.size(); ++a)
        {
            const auto &x = axes[a];
            if (!std::isfinite(x.min_lam) || !std::isfinite(x.max_lam) || !std::isfinite(x.step_lam))
                throw Error("grid: axis " + std::to_string(a + 1) + " has non-finite bounds");
            if (!(x.min_lam > 0.0))
                throw Error("grid: axis " + std::to_string(a + 1) + " must start at a positive spacing");
            if (!(x.min_lam < x.max_lam))
                throw Error("grid: axis " + std::to_string(a + 1) + " needs min < max");
            if (!(x.step_lam > 0.0))
                throw Error("grid: axis " + std::to_string(a + 1) + " needs a positive step");
            if ((x.max_lam - x.min_lam) / x.step_lam > double(max_grid_points))
                throw Error("grid: axis " + std::to_string(a + 1) + " exceeds the point limit");
        }
        if (total_points() > max_grid_points)
            throw Error("grid: " + std::to_string(total_points()) + " points exceed the limit of " +
                        std::to_string(max_grid_points));
    }

    std::size_t GridSpec::total_points() const
    {
        double total = 1.0;
        for (const auto &a : axes)
            total *= double(a.points());
        return total > double(max_grid_points) * 2 ? max_grid_points * 2 : static_cast<std::size_t>(total);
    }

    namespace
    {
        // Row-major decomposition of a flat grid index, last axis fastest.
        std::vector<std::size_t> split(std::size_t flat, const GridSpec &spec)
        {
            std::vector<std::size_t> k(spec.axes.size());
            for (std::size_t a = spec.axes.size(); a-- > 0;)
            {
                const std::size_t n = spec.axes[a].points();
                k[a] = flat % n;
                flat /= n;
            }
            return k;
        }

        double neff_of_gram(const Eigen::MatrixXcd &g)
        {
            const auto ev = hermitian_eigenvalues(g);
            return effective_rank(ev);
        }

        template <typename Eval>
        GridResult run(const GridSpec &spec, Eval &&eval)
        {
            const std::size_t n = spec.total_points();
            std::vector<double> neff(n);
            parallel_for(n, [&](std::size_t i) { neff[i] = eval(split(i, spec)); });

            GridResult r;
            r.evaluated = n;
            double best_sum = 0.0;
            bool have = false;
            for (std::size_t i = 0; i < n; ++i)
            {
                const auto k = split(i, spec);
                std::vector<double> p(k.size());
                for (std::size_t a = 0; a < k.size(); ++a)
                    p[a] = spec.axes[a].value(k[a]);
                const double sum = std::accumulate(p.begin(), p.end(), 0.0);
                // Plateaus are common; ties (to round-off) go to the most compact array.
                const double tol = 1e-12 * std::max(1.0, r.best_effective_rank);
                if (!have || neff[i] > r.best_effective_rank + tol ||
                    (neff[i] >= r.best_effective_rank - tol && sum < best_sum))
                {
                    r.best_effective_rank = neff[i];
                    r.best_params = p;
                    best_sum = sum;
                    have = true;
                }
                if (spec.keep_trace)
                    r.trace.push_back({std::move(p), neff[i]});
            }
            return r;
        }
    }

    GridResult grid_search(const ArrayGeometry &tx, const ArrayGeometry &rx_template, const Waveband &w,
                           const GridSpec &spec)
    {
        spec.validate();
        const bool linear = rx_template.n2() == 1;
        if (spec.axes.size() > 2 || (linear && spec.axes.size() != 1))
            throw Error("grid_search: a uniform receiver takes one axis (linear or tied) or two axes (planar)");
        const auto tx_layout = expand_uniform(tx);

        return run(spec,
                   [&](const std::vector<std::size_t> &k)
                   {
                       const double d1 = w.from_lambda(spec.axes[0].value(k[0]));
                       const double d2 = spec.axes.size() == 2 ? w.from_lambda(spec.axes[1].value(k[1])) : d1;
                       const auto rx = rx_template.with_spacings(d1, d2);
                       if (spec.objective == GridObjective::Exact)
                           return neff_of_gram(gram(exact_channel(tx_layout, expand_uniform(rx), w)));
                       return neff_of_gram(gram(quartic_channel(tx, rx, w).channel));
                   });
    }

    GridResult grid_search(const ArrayGeometry &tx, const SubArrayPartition &rx_template, const Waveband &w,
                           const GridSpec &spec)
    {
        spec.validate();
        const std::size_t n = rx_template.size();
        const std::size_t groups = rx_template.symmetric() ? n / 2 : n;
        if (spec.axes.size() != groups)
            throw Error("grid_search: expected " + std::to_string(groups) + " axes for this partition, got " +
                        std::to_string(spec.axes.size()));

        // The Gram matrix is a sum of per-sub-array contributions, each a
        // function of that sub-array's spacing alone. Tabulate the group sums
        // along every axis, then add one entry per axis at each grid point.
        const auto tx_layout = expand_uniform(tx);
        std::vector<std::vector<Eigen::MatrixXcd>> table(groups);
        for (std::size_t a = 0; a < groups; ++a)
        {
            const auto &axis = spec.axes[a];
            table[a].resize(axis.points());
            std::vector<std::size_t> members{a};
            if (rx_template.symmetric())
                members.push_back(n - 1 - a);
            parallel_for(axis.points(),
                         [&](std::size_t k)
                         {
                             const double d = w.from_lambda(axis.value(k));
                             Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(tx.count(), tx.count());
                             for (std::size_t i : members)
                             {
                                 const auto &s = rx_template[i];
                                 const double d2 = s.n2 > 1 ? s.d2 : d;
                                 const ArrayGeometry sub(s.n1, s.n2, d, d2, s.center, rx_template.rotation(),
                                                         rx_template.tilt());
                                 const Eigen::MatrixXcd h =
                                     spec.objective == GridObjective::Exact
                                         ? exact_channel(tx_layout, expand_uniform(sub), w).entries
                                         : quartic_channel(tx, sub, w).channel.entries;
                                 g += h.adjoint() * h;
                             }
                             table[a][k] = 0.5 * (g + g.adjoint());
                         });
        }

        return run(spec,
                   [&](const std::vector<std::size_t> &k)
                   {
                       Eigen::MatrixXcd g = table[0][k[0]];
                       for (std::size_t a = 1; a < k.size(); ++a)
                           g += table[a][k[a]];
                       return neff_of_gram(g);
                   });
    }

    void write_grid_trace_csv(std::ostream &out, const GridResult &r)
    {
        const std::size_t dims = r.best_params.size();
        for (std::size_t a = 0; a < dims; ++a)
            out << "param" << a + 1 << "_lam,";
        out << "neff\n";
        const auto prec = out.precision(17);
        for (const auto &p : r.trace)
        {
            for (double v : p.params_lam)
                out << v << ',';
            out << p.effective_rank << '\n';
        }
        out.precision(prec);
    }
}
