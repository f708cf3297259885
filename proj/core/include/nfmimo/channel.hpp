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

#ifndef NFMIMO_CHANNEL_HPP
#define NFMIMO_CHANNEL_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/waveband.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace nfmimo
{
    enum class ChannelModel
    {
        Exact,
        Quartic,
        QuarticSubArray
    };

    const char *to_string(ChannelModel model);

    // Receive x transmit matrix of free-space Green's function values [1/m].
    struct ChannelMatrix
    {
        Eigen::MatrixXcd entries;
        Waveband waveband;
        ChannelModel model = ChannelModel::Exact;

        Eigen::Index rows() const { return entries.rows(); }
        Eigen::Index cols() const { return entries.cols(); }
    };

    // Factors of the quartic wavefront model of one (sub-)array link:
    //   H = scale * exp(j * carrier_phase) * diag(f_rx) * p * diag(f_tx)^H
    // All entries of f_tx, f_rx and p are unit-modulus.
    struct QuarticFactors
    {
        Eigen::VectorXcd f_tx;
        Eigen::VectorXcd f_rx;
        Eigen::MatrixXcd p;
        double scale = 0.0;         // 1 / (4 pi |c_o|)
        double carrier_phase = 0.0; // k0 |c_o|
    };

    struct QuarticChannel
    {
        ChannelMatrix channel;
        QuarticFactors factors;
        std::vector<std::string> warnings; // paraxial-predicate violations
    };

    struct SubArrayChannel
    {
        ChannelMatrix channel;              // blocks stacked in partition order
        std::vector<QuarticFactors> blocks; // one per sub-array
        std::vector<std::string> warnings;
    };

    // H(m, l) = exp(j k0 d_ml) / (4 pi d_ml), d_ml = |r_m - r_l|.
    ChannelMatrix exact_channel(const ElementLayout &tx, const ElementLayout &rx, const Waveband &w);

    QuarticChannel quartic_channel(const ArrayGeometry &tx, const ArrayGeometry &rx, const Waveband &w,
                                   double paraxial_threshold = default_paraxial_threshold);

    SubArrayChannel subarray_channel(const ArrayGeometry &tx, const SubArrayPartition &partition,
                                     const Waveband &w,
                                     double paraxial_threshold = default_paraxial_threshold);

    // Quartic factors for arbitrary local coordinates (offsets from each array
    // center) and center offset c_o = c_rx - c_tx.
    QuarticFactors quartic_factors(const std::vector<Vec3> &tx_local, const std::vector<Vec3> &rx_local,
                                   const Vec3 &center_offset, const Waveband &w);

    // Rebuilds H from its factors.
    Eigen::MatrixXcd compose(const QuarticFactors &f);

    // CSV with header `m,l,re,im` (0-based indices), 17 significant digits.
    void write_channel_csv(std::ostream &out, const ChannelMatrix &h);
}

#endif
