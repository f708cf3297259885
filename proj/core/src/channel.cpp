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

#include "nfmimo/channel.hpp"
#include "nfmimo/error.hpp"

#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nfmimo
{
    const char *to_string(ChannelModel model)
    {
        switch (model)
        {
        case ChannelModel::Exact:
            return "Exact";
        case ChannelModel::Quartic:
            return "Quartic";
        case ChannelModel::QuarticSubArray:
            return "QuarticSubArray";
        }
        return "?";
    }

    ChannelMatrix exact_channel(const ElementLayout &tx, const ElementLayout &rx, const Waveband &w)
    {
        const auto rows = static_cast<Eigen::Index>(rx.size());
        const auto cols = static_cast<Eigen::Index>(tx.size());
        if (rows == 0 || cols == 0)
            throw Error("exact_channel: layouts must be non-empty");

        ChannelMatrix h{Eigen::MatrixXcd(rows, cols), w, ChannelModel::Exact};
        const double k0 = w.wavenumber();
        for (Eigen::Index l = 0; l < cols; ++l)
        {
            const Vec3 &rt = tx.positions[static_cast<std::size_t>(l)];
            for (Eigen::Index m = 0; m < rows; ++m)
            {
                const double d = (rx.positions[static_cast<std::size_t>(m)] - rt).norm();
                if (!(d > 0.0))
                    throw Error("exact_channel: transmit element " + std::to_string(l) +
                                " coincides with receive element " + std::to_string(m));
                h.entries(m, l) = std::polar(1.0 / (4.0 * pi * d), k0 * d);
            }
        }
        return h;
    }

    namespace
    {
        // Phase terms of the quartic model: first-order Taylor term with the
        // exact rho, second-order term with the linear part of rho only.
        // H(m,l) phase = k0|c_o| + rx(m) + cross(m,l) + tx(l).
        struct QuarticPhases
        {
            double distance;
            Eigen::VectorXd tx;
            Eigen::VectorXd rx;
            Eigen::MatrixXd cross;
        };

        QuarticPhases quartic_phases(const std::vector<Vec3> &tx_local, const std::vector<Vec3> &rx_local,
                                     const Vec3 &co, const Waveband &w)
        {
            const double c = co.norm();
            if (!(c > 0.0))
                throw Error("quartic channel: array centers coincide (|c_o| = 0)");
            const double c2 = c * c;
            const double k0 = w.wavenumber();
            const auto L = static_cast<Eigen::Index>(tx_local.size());
            const auto M = static_cast<Eigen::Index>(rx_local.size());

            QuarticPhases ph{c, Eigen::VectorXd(L), Eigen::VectorXd(M), Eigen::MatrixXd(M, L)};
            Eigen::VectorXd proj_tx(L), proj_rx(M);
            for (Eigen::Index l = 0; l < L; ++l)
            {
                const Vec3 &r = tx_local[static_cast<std::size_t>(l)];
                proj_tx(l) = co.dot(r);
                ph.tx(l) = k0 / (2.0 * c) * (r.squaredNorm() - 2.0 * proj_tx(l) - proj_tx(l) * proj_tx(l) / c2);
            }
            for (Eigen::Index m = 0; m < M; ++m)
            {
                const Vec3 &r = rx_local[static_cast<std::size_t>(m)];
                proj_rx(m) = co.dot(r);
                ph.rx(m) = k0 / (2.0 * c) * (r.squaredNorm() + 2.0 * proj_rx(m) - proj_rx(m) * proj_rx(m) / c2);
            }
            for (Eigen::Index l = 0; l < L; ++l)
                for (Eigen::Index m = 0; m < M; ++m)
                {
                    const double inner = rx_local[static_cast<std::size_t>(m)].dot(tx_local[static_cast<std::size_t>(l)]);
                    ph.cross(m, l) = -k0 / c * (inner - proj_rx(m) * proj_tx(l) / c2);
                }
            return ph;
        }

        // Sums the phases before the exponential so the large k0|c_o| term is
        // only reduced once.
        Eigen::MatrixXcd quartic_block(const QuarticPhases &ph, const Waveband &w)
        {
            const double amp = 1.0 / (4.0 * pi * ph.distance);
            const double carrier = w.wavenumber() * ph.distance;
            Eigen::MatrixXcd h(ph.rx.size(), ph.tx.size());
            for (Eigen::Index l = 0; l < h.cols(); ++l)
                for (Eigen::Index m = 0; m < h.rows(); ++m)
                    h(m, l) = std::polar(amp, carrier + ph.rx(m) + ph.cross(m, l) + ph.tx(l));
            return h;
        }

        QuarticFactors factors_from(const QuarticPhases &ph, const Waveband &w)
        {
            QuarticFactors f;
            f.scale = 1.0 / (4.0 * pi * ph.distance);
            f.carrier_phase = w.wavenumber() * ph.distance;
            f.f_tx = ph.tx.unaryExpr([](double a) { return std::polar(1.0, -a); }); // enters H conjugated
            f.f_rx = ph.rx.unaryExpr([](double a) { return std::polar(1.0, a); });
            f.p = ph.cross.unaryExpr([](double a) { return std::polar(1.0, a); });
            return f;
        }
    }

    QuarticFactors quartic_factors(const std::vector<Vec3> &tx_local, const std::vector<Vec3> &rx_local,
                                   const Vec3 &center_offset, const Waveband &w)
    {
        return factors_from(quartic_phases(tx_local, rx_local, center_offset, w), w);
    }

    Eigen::MatrixXcd compose(const QuarticFactors &f)
    {
        const std::complex<double> lead = std::polar(f.scale, f.carrier_phase);
        return lead * (f.f_rx.asDiagonal() * f.p * f.f_tx.conjugate().asDiagonal());
    }

    namespace
    {
        std::vector<Vec3> local_positions(const ArrayGeometry &g)
        {
            std::vector<Vec3> out;
            out.reserve(static_cast<std::size_t>(g.count()));
            for (int i1 = 0; i1 < g.n1(); ++i1)
                for (int i2 = 0; i2 < g.n2(); ++i2)
                    out.push_back(g.local_position(i1, i2));
            return out;
        }

        std::string paraxial_warning(const std::string &what, double ratio, double threshold)
        {
            std::ostringstream os;
            os << what << ": paraxial predicate violated (max offset / |c_o| = " << ratio
               << " > " << threshold << "); quartic model may be inaccurate";
            return os.str();
        }
    }

    QuarticChannel quartic_channel(const ArrayGeometry &tx, const ArrayGeometry &rx, const Waveband &w,
                                   double paraxial_threshold)
    {
        const Vec3 co = rx.center() - tx.center();
        if (!(co.norm() > 0.0))
            throw Error("quartic_channel: array centers coincide (|c_o| = 0)");
        const auto tl = local_positions(tx);
        const auto rl = local_positions(rx);

        const auto ph = quartic_phases(tl, rl, co, w);
        QuarticChannel out{ChannelMatrix{quartic_block(ph, w), w, ChannelModel::Quartic}, factors_from(ph, w), {}};
        const double ratio = std::max(tx.max_offset(), rx.max_offset()) / co.norm();
        if (ratio > paraxial_threshold)
            out.warnings.push_back(paraxial_warning("quartic_channel", ratio, paraxial_threshold));
        return out;
    }

    SubArrayChannel subarray_channel(const ArrayGeometry &tx, const SubArrayPartition &partition,
                                     const Waveband &w, double paraxial_threshold)
    {
        const auto tl = local_positions(tx);
        SubArrayChannel out{ChannelMatrix{Eigen::MatrixXcd(partition.element_count(), tx.count()), w,
                                          ChannelModel::QuarticSubArray},
                            {},
                            {}};

        Eigen::Index row = 0;
        for (std::size_t i = 0; i < partition.size(); ++i)
        {
            const auto sub = partition.subarray_geometry(i);
            const Vec3 co = sub.center() - tx.center();
            if (!(co.norm() > 0.0))
                throw Error("subarray_channel: sub-array " + std::to_string(i + 1) +
                            " is centered on the transmitter (|c_o^i| = 0)");
            const auto rl = local_positions(sub);
            const auto ph = quartic_phases(tl, rl, co, w);
            out.channel.entries.middleRows(row, sub.count()) = quartic_block(ph, w);
            out.blocks.push_back(factors_from(ph, w));
            row += sub.count();

            const double ratio = std::max(tx.max_offset(), sub.max_offset()) / co.norm();
            if (ratio > paraxial_threshold)
                out.warnings.push_back(paraxial_warning("subarray_channel[" + std::to_string(i + 1) + "]",
                                                        ratio, paraxial_threshold));
        }
        return out;
    }

    void write_channel_csv(std::ostream &out, const ChannelMatrix &h)
    {
        const auto flags = out.flags();
        const auto prec = out.precision();
        out << "m,l,re,im\n" << std::setprecision(17);
        for (Eigen::Index m = 0; m < h.rows(); ++m)
            for (Eigen::Index l = 0; l < h.cols(); ++l)
                out << m << ',' << l << ',' << h.entries(m, l).real() << ',' << h.entries(m, l).imag() << '\n';
        out.flags(flags);
        out.precision(prec);
    }
}
