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

#include "nfmimo/spectral.hpp"
#include "nfmimo/error.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>

namespace nfmimo
{
    Eigen::MatrixXcd gram(const Eigen::MatrixXcd &h)
    {
        Eigen::MatrixXcd g = h.adjoint() * h;
        // Enforce exact Hermitian symmetry; the product is Hermitian up to round-off.
        return 0.5 * (g + g.adjoint());
    }

    std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd &g)
    {
        if (g.rows() != g.cols() || g.rows() == 0)
            throw Error("hermitian_eigenvalues: expected a non-empty square matrix");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw Error("hermitian_eigenvalues: eigensolver did not converge");

        const Eigen::VectorXd &ev = solver.eigenvalues(); // ascending
        std::vector<double> out(ev.data(), ev.data() + ev.size());
        std::reverse(out.begin(), out.end());
        const double floor = -1e-10 * std::max(out.front(), 0.0);
        for (double &v : out)
            if (v < 0.0 && v >= floor)
                v = 0.0;
        return out;
    }

    namespace
    {
        double largest(std::span<const double> ev)
        {
            if (ev.empty())
                throw Error("spectrum is empty");
            return *std::max_element(ev.begin(), ev.end());
        }
    }

    int numeric_rank(std::span<const double> eigenvalues)
    {
        const double top = largest(eigenvalues);
        if (!(top > 0.0))
            return 0;
        const double cut = numeric_rank_cutoff * top;
        return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                              [cut](double v) { return v > cut; }));
    }

    double effective_rank(std::span<const double> eigenvalues)
    {
        const double top = largest(eigenvalues);
        if (!(top > 0.0))
            throw Error("effective_rank: all eigenvalues are zero");
        const double cut = numeric_rank_cutoff * top;

        double total = 0.0;
        for (double v : eigenvalues)
            if (v > cut)
                total += std::sqrt(v);
        double entropy = 0.0;
        for (double v : eigenvalues)
            if (v > cut)
            {
                const double p = std::sqrt(v) / total;
                entropy -= p * std::log(p);
            }
        return std::exp(entropy);
    }

    PowerAllocation allocate_power(std::span<const double> eigenvalues, double noise_power,
                                   double total_power, PowerPolicy policy)
    {
        if (eigenvalues.empty())
            throw Error("capacity: spectrum is empty");
        if (!(noise_power > 0.0) || !(total_power > 0.0))
            throw Error("capacity: noise and total power must be positive");

        const std::size_t n = eigenvalues.size();
        PowerAllocation out{std::vector<double>(n, 0.0), 0.0};
        const double top = largest(eigenvalues);
        if (!(top > 0.0))
            return out;
        const double cut = numeric_rank_cutoff * top;

        if (policy == PowerPolicy::Equipower)
        {
            const int r = numeric_rank(eigenvalues);
            for (std::size_t i = 0; i < n; ++i)
                if (eigenvalues[i] > cut)
                    out.powers[i] = total_power / r;
            return out;
        }

        // Waterfilling: visit modes by decreasing gain, grow the active set
        // while the common water level stays above the next inverse gain.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return eigenvalues[a] > eigenvalues[b]; });

        double inverse_sum = 0.0;
        double mu = 0.0;
        std::size_t active = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double v = eigenvalues[order[k]];
            if (!(v > cut))
                break;
            const double inv = noise_power / v;
            const double candidate = (total_power + inverse_sum + inv) / static_cast<double>(k + 1);
            if (candidate <= inv)
                break;
            inverse_sum += inv;
            mu = candidate;
            active = k + 1;
        }
        for (std::size_t k = 0; k < active; ++k)
        {
            const std::size_t i = order[k];
            out.powers[i] = std::max(0.0, mu - noise_power / eigenvalues[i]);
        }
        out.water_level = mu;
        return out;
    }

    double capacity(std::span<const double> eigenvalues, double noise_power, double total_power,
                    PowerPolicy policy)
    {
        const auto alloc = allocate_power(eigenvalues, noise_power, total_power, policy);
        double c = 0.0;
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            if (alloc.powers[i] > 0.0)
                c += std::log2(1.0 + alloc.powers[i] * eigenvalues[i] / noise_power);
        return c;
    }

    Eigen::MatrixXd orthogonality_ratio_db(const Eigen::MatrixXcd &g)
    {
        if (g.rows() != g.cols())
            throw Error("orthogonality_ratio: Gram matrix must be square");
        const Eigen::Index n = g.rows();
        Eigen::VectorXd diag(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            diag(i) = g(i, i).real();
            if (!(diag(i) > 0.0))
                throw Error("orthogonality_ratio: Gram diagonal must be strictly positive");
        }
        Eigen::MatrixXd out(n, n);
        for (Eigen::Index u = 0; u < n; ++u)
            for (Eigen::Index v = 0; v < n; ++v)
            {
                if (u == v)
                {
                    out(u, v) = 0.0;
                    continue;
                }
                const double ratio = std::abs(g(u, v)) / std::sqrt(diag(u) * diag(v));
                out(u, v) = ratio > 0.0 ? std::max(20.0 * std::log10(ratio), ortho_floor_db) : ortho_floor_db;
            }
        return out;
    }

    double max_off_diagonal(const Eigen::MatrixXd &ratio_db)
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (Eigen::Index u = 0; u < ratio_db.rows(); ++u)
            for (Eigen::Index v = 0; v < ratio_db.cols(); ++v)
                if (u != v)
                    worst = std::max(worst, ratio_db(u, v));
        return worst;
    }

    SpectralReport analyze(const ChannelMatrix &h, double noise_power, double total_power)
    {
        const Eigen::MatrixXcd g = gram(h);
        SpectralReport r;
        r.eigenvalues = hermitian_eigenvalues(g);
        r.effective_rank = effective_rank(r.eigenvalues);
        r.rank_numeric = numeric_rank(r.eigenvalues);
        r.capacity_equipower = capacity(r.eigenvalues, noise_power, total_power, PowerPolicy::Equipower);
        r.capacity_waterfilling = capacity(r.eigenvalues, noise_power, total_power, PowerPolicy::Waterfilling);
        r.ortho_ratio_db = orthogonality_ratio_db(g);
        return r;
    }

    void write_report_csv_header(std::ostream &out)
    {
        out << "id,neff,rank,capacity_equipower,capacity_waterfilling\n";
    }

    void write_report_csv_row(std::ostream &out, const std::string &id, const SpectralReport &r)
    {
        const auto prec = out.precision(17);
        out << id << ',' << r.effective_rank << ',' << r.rank_numeric << ',' << r.capacity_equipower << ','
            << r.capacity_waterfilling << '\n';
        out.precision(prec);
    }

    std::string report_to_json(const std::string &id, const SpectralReport &r)
    {
        nlohmann::ordered_json j;
        j["id"] = id;
        j["neff"] = r.effective_rank;
        j["rank"] = r.rank_numeric;
        j["capacity_equipower"] = r.capacity_equipower;
        j["capacity_waterfilling"] = r.capacity_waterfilling;
        j["eigenvalues"] = r.eigenvalues;
        auto rows = nlohmann::json::array();
        for (Eigen::Index u = 0; u < r.ortho_ratio_db.rows(); ++u)
        {
            std::vector<double> row(static_cast<std::size_t>(r.ortho_ratio_db.cols()));
            for (Eigen::Index v = 0; v < r.ortho_ratio_db.cols(); ++v)
                row[static_cast<std::size_t>(v)] = r.ortho_ratio_db(u, v);
            rows.push_back(row);
        }
        j["ortho_ratio_db"] = rows;
        return j.dump(2);
    }
}
