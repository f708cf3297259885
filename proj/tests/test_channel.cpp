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
#include "nfmimo/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace nfmimo;
using nfmimo::test::band;
using nfmimo::test::lam;
using nfmimo::test::phase_gap;

namespace
{
    ElementLayout point(const Vec3 &p) { return expand_uniform(ArrayGeometry(1, 1, 1.0, 1.0, p)); }

    double max_phase_error(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b)
    {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < a.size(); ++i)
            worst = std::max(worst, phase_gap(a(i), b(i)));
        return worst;
    }

    SubArrayPartition design3_partition()
    {
        return SubArrayPartition::mirrored({{Vec3(lam(625.04), lam(256), 0), 12, 1, lam(58.47), lam(58.47)},
                                            {Vec3(lam(120.33), lam(256), 0), 12, 1, lam(24.49), lam(24.49)}});
    }
}

TEST_CASE("exact entries follow the free-space Green's function")
{
    SUBCASE("one wavelength apart: phase wraps to zero")
    {
        const auto h = exact_channel(point(Vec3::Zero()), point(Vec3(0, lam(1), 0)), band).entries(0, 0);
        CHECK(std::abs(h) == doctest::Approx(1.0 / (4.0 * pi * lam(1))).epsilon(1e-14));
        CHECK(std::abs(std::arg(h)) < 1e-12);
    }
    SUBCASE("half a wavelength apart: phase pi")
    {
        const auto h = exact_channel(point(Vec3::Zero()), point(Vec3(0, lam(0.5), 0)), band).entries(0, 0);
        CHECK(std::abs(std::abs(std::arg(h)) - pi) < 1e-12);
    }
    SUBCASE("coincident elements are rejected")
    {
        CHECK_THROWS_AS(exact_channel(point(Vec3::Zero()), point(Vec3::Zero()), band), Error);
    }
}

TEST_CASE("exact channel shape, scaling and reciprocity")
{
    const auto tx = expand_uniform(ArrayGeometry(3, 2, lam(0.5), lam(0.5)));
    const auto rx = expand_uniform(ArrayGeometry(4, 1, lam(3), lam(3), Vec3(lam(5), lam(40), lam(2)), 0.2, 0.1));
    const auto h = exact_channel(tx, rx, band).entries;
    CHECK(h.rows() == 4);
    CHECK(h.cols() == 6);
    CHECK((h - exact_channel(rx, tx, band).entries.transpose()).norm() < 1e-15 * h.norm());

    ElementLayout tx2 = tx, rx2 = rx;
    for (auto &p : tx2.positions)
        p *= 2.0;
    for (auto &p : rx2.positions)
        p *= 2.0;
    const auto h2 = exact_channel(tx2, rx2, band).entries;
    for (Eigen::Index m = 0; m < h.rows(); ++m)
        for (Eigen::Index l = 0; l < h.cols(); ++l)
        {
            const double d = (rx.positions[m] - tx.positions[l]).norm();
            CHECK(std::abs(h2(m, l)) == doctest::Approx(0.5 * std::abs(h(m, l))).epsilon(1e-13));
            // Extra path d adds k0 d of phase.
            CHECK(phase_gap(h2(m, l), h(m, l) * std::polar(1.0, band.wavenumber() * d)) < 1e-9);
        }
}

TEST_CASE("quartic factors")
{
    const ArrayGeometry tx(4, 4, lam(0.5), lam(0.5));
    const ArrayGeometry rx(4, 4, lam(2), lam(2), Vec3(lam(3), lam(256), lam(1)), 0.1, 0.05);
    const auto q = quartic_channel(tx, rx, band);
    const auto &f = q.factors;

    SUBCASE("unit modulus")
    {
        CHECK((f.f_tx.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK((f.f_rx.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK((f.p.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK(f.scale == doctest::Approx(1.0 / (4.0 * pi * (rx.center() - tx.center()).norm())));
    }
    SUBCASE("composition reproduces the channel")
    {
        CHECK((compose(f) - q.channel.entries).norm() < 1e-9 * q.channel.entries.norm());
    }
    SUBCASE("the receive factor cancels in the Gram matrix")
    {
        const Eigen::MatrixXcd without = f.p * f.f_tx.conjugate().asDiagonal();
        const Eigen::MatrixXcd with = f.f_rx.asDiagonal() * without;
        CHECK((gram(with) - gram(without)).norm() < 1e-10 * gram(without).norm());
    }
    SUBCASE("paraxial geometry stays within 0.05 rad of the exact phases")
    {
        const auto e = exact_channel(expand_uniform(tx), expand_uniform(rx), band).entries;
        CHECK(max_phase_error(q.channel.entries, e) < 0.05);
        CHECK(q.warnings.empty());
    }
}

TEST_CASE("quartic model phases match the second-order expansion")
{
    // Independent oracle: expand |c + dr| - hand-written terms of the model.
    const ArrayGeometry tx(2, 1, lam(4), lam(4));
    const ArrayGeometry rx(2, 1, lam(6), lam(6), Vec3(lam(10), lam(200), lam(-5)), 0.0, 0.0);
    const auto q = quartic_channel(tx, rx, band);
    const Vec3 c = rx.center() - tx.center();
    const double cn = c.norm(), k0 = band.wavenumber();
    for (int m = 0; m < 2; ++m)
        for (int l = 0; l < 2; ++l)
        {
            const Vec3 rr = rx.local_position(m, 0), rt = tx.local_position(l, 0);
            const Vec3 d = rr - rt;
            const double lin = c.dot(d) / cn;
            // rho = 2 c.d + |d|^2, first-order term with exact rho, second with its linear part.
            const double dist = cn + (2 * c.dot(d) + d.squaredNorm()) / (2 * cn) - (lin * lin) / (2 * cn);
            const auto want = std::polar(1.0 / (4 * pi * cn), k0 * dist);
            CHECK(phase_gap(q.channel.entries(m, l), want) < 1e-9);
        }
}

TEST_CASE("broadside single elements")
{
    const auto q = quartic_channel(ArrayGeometry(1, 1, 1.0, 1.0), ArrayGeometry(1, 1, 1.0, 1.0, Vec3(0, lam(9.25), 0)), band);
    CHECK(std::abs(q.factors.p(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(q.factors.f_tx(0) - 1.0) < 1e-15);
    CHECK(std::abs(q.channel.entries(0, 0)) == doctest::Approx(q.factors.scale));
}

TEST_CASE("quartic error shrinks with the aperture")
{
    double prev = 1e9;
    for (double d : {8.0, 4.0, 2.0, 1.0})
    {
        const ArrayGeometry tx(4, 4, lam(d), lam(d));
        const ArrayGeometry rx(4, 4, lam(d), lam(d), Vec3(lam(20), lam(256), lam(10)));
        const auto e = exact_channel(expand_uniform(tx), expand_uniform(rx), band).entries;
        const double err = max_phase_error(quartic_channel(tx, rx, band).channel.entries, e);
        CHECK(err <= 0.5 * prev);
        prev = err;
    }
}

TEST_CASE("sub-array channel")
{
    const ArrayGeometry tx = ArrayGeometry::linear(16, lam(0.5));
    SUBCASE("one sub-array equals the quartic channel")
    {
        const SubArrayPartition p({{Vec3(lam(4), lam(256), 0), 8, 1, lam(3), lam(3)}});
        const auto s = subarray_channel(tx, p, band);
        const auto q = quartic_channel(tx, p.subarray_geometry(0), band);
        CHECK((s.channel.entries - q.channel.entries).norm() < 1e-15 * q.channel.entries.norm());
    }
    SUBCASE("mirror pair blocks have equal magnitudes")
    {
        const auto p = SubArrayPartition::mirrored({{Vec3(lam(100), lam(256), 0), 1, 1, 1.0, 1.0}});
        const auto s = subarray_channel(tx, p, band);
        CHECK(s.blocks[0].scale == doctest::Approx(s.blocks[1].scale));
    }
    SUBCASE("elements near each sub-array center track the exact channel")
    {
        // Second-order phases hold only where the local offset is small
        // against the link distance; the outer elements of a wide sub-array wrap.
        const auto p = design3_partition();
        const auto s = subarray_channel(tx, p, band);
        const auto e = exact_channel(expand_uniform(tx), expand_partition(p), band).entries;
        const auto layout = expand_partition(p);
        int row = 0, checked = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
        {
            const auto g = p.subarray_geometry(i);
            const double dist = (g.center() - tx.center()).norm();
            for (int m = 0; m < g.count(); ++m, ++row)
            {
                if ((layout.positions[row] - g.center()).norm() > 0.1 * dist)
                    continue;
                ++checked;
                for (int l = 0; l < tx.count(); ++l)
                    CHECK(phase_gap(s.channel.entries(row, l), e(row, l)) < 0.1);
            }
        }
        CHECK(checked >= 8);
        CHECK(!s.warnings.empty());
    }
    SUBCASE("a sub-array on top of the transmitter is rejected")
    {
        const SubArrayPartition p({{Vec3::Zero(), 2, 1, 1.0, 1.0}});
        CHECK_THROWS_AS(subarray_channel(tx, p, band), Error);
        CHECK_THROWS_AS(quartic_channel(tx, ArrayGeometry(2, 1, 1.0, 1.0), band), Error);
    }
}

TEST_CASE("whole Design 3 partition within 0.1 rad of the exact channel" * doctest::may_fail())
{
    // Kept visible: the outer elements of the 58-wavelength-pitch sub-arrays
    // are far outside the second-order regime and miss by close to pi.
    const ArrayGeometry tx = ArrayGeometry::linear(16, lam(0.5));
    const auto p = design3_partition();
    const auto s = subarray_channel(tx, p, band);
    const auto e = exact_channel(expand_uniform(tx), expand_partition(p), band).entries;
    CHECK(max_phase_error(s.channel.entries, e) < 0.1);
}

TEST_CASE("channel CSV")
{
    const auto h = exact_channel(expand_uniform(ArrayGeometry(2, 1, 1.0, 1.0)),
                                 expand_uniform(ArrayGeometry(1, 1, 1.0, 1.0, Vec3(0, 3, 0))), band);
    std::ostringstream s;
    write_channel_csv(s, h);
    std::istringstream in(s.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "m,l,re,im");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 2);
}
