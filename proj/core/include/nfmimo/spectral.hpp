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

#ifndef NFMIMO_SPECTRAL_HPP
#define NFMIMO_SPECTRAL_HPP

#include "nfmimo/channel.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nfmimo
{
    // Eigenvalues below this fraction of the largest one are treated as zero.
    inline constexpr double numeric_rank_cutoff = 1e-12;

    // Value reported for an exactly vanishing off-diagonal Gram entry.
    inline constexpr double ortho_floor_db = -300.0;

    enum class PowerPolicy
    {
        Equipower,
        Waterfilling
    };

    // G = H^H H.
    Eigen::MatrixXcd gram(const Eigen::MatrixXcd &h);
    inline Eigen::MatrixXcd gram(const ChannelMatrix &h) { return gram(h.entries); }

    // Eigenvalues of a Hermitian matrix, descending. Round-off negatives down to
    // -1e-10 * lambda_max are clamped to zero.
    std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd &g);

    // Number of eigenvalues above numeric_rank_cutoff * lambda_max.
    int numeric_rank(std::span<const double> eigenvalues);

    // exp(entropy) of the normalized singular values sqrt(lambda_i). Eigenvalues
    // below the numeric-rank cutoff do not contribute. Throws on an all-zero
    // spectrum.
    double effective_rank(std::span<const double> eigenvalues);

    struct PowerAllocation
    {
        std::vector<double> powers; // per eigenvalue, same order as the input
        double water_level = 0.0;   // mu; zero for equipower
    };

    PowerAllocation allocate_power(std::span<const double> eigenvalues, double noise_power,
                                   double total_power, PowerPolicy policy);

    // sum_i log2(1 + P_i lambda_i / sigma^2) [bit/s/Hz].
    double capacity(std::span<const double> eigenvalues, double noise_power, double total_power,
                    PowerPolicy policy);

    // 20 log10(|G(u,v)| / sqrt(G(u,u) G(v,v))); diagonal is exactly 0 dB and
    // vanishing entries are reported as ortho_floor_db.
    Eigen::MatrixXd orthogonality_ratio_db(const Eigen::MatrixXcd &g);

    // Largest off-diagonal entry of an orthogonality-ratio map.
    double max_off_diagonal(const Eigen::MatrixXd &ratio_db);

    struct SpectralReport
    {
        std::vector<double> eigenvalues;
        double effective_rank = 0.0;
        int rank_numeric = 0;
        double capacity_equipower = 0.0;
        double capacity_waterfilling = 0.0;
        Eigen::MatrixXd ortho_ratio_db;
    };

    SpectralReport analyze(const ChannelMatrix &h, double noise_power, double total_power);

    // One CSV row `id,neff,rank,capacity_equipower,capacity_waterfilling`.
    void write_report_csv_header(std::ostream &out);
    void write_report_csv_row(std::ostream &out, const std::string &id, const SpectralReport &r);

    // JSON detail record including the full spectrum and orthogonality map.
    std::string report_to_json(const std::string &id, const SpectralReport &r);
}

#endif
