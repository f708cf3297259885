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

#include "nfmimo/geometry.hpp"
#include "nfmimo/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nfmimo
{
    namespace
    {
        void check_counts_and_spacings(int n1, int n2, double d1, double d2, const char *what)
        {
            if (n1 < 1 || n2 < 1)
                throw Error(std::string(what) + ": element counts must be >= 1");
            if (!(d1 > 0.0) || !(d2 > 0.0) || !std::isfinite(d1) || !std::isfinite(d2))
                throw Error(std::string(what) + ": spacings must be positive and finite");
        }

        Vec3 axis1(double a) { return {std::cos(a), std::sin(a), 0.0}; }
        Vec3 axis2(double a, double b) { return {-std::sin(b) * std::sin(a), std::sin(b) * std::cos(a), std::cos(b)}; }

        double centered(int i, int n) { return i - 0.5 * (n - 1); }

        bool mirrors(const SubArraySpec &a, const SubArraySpec &b)
        {
            auto close = [](double x, double y)
            { return std::abs(x - y) <= 1e-9 * (1.0 + std::max(std::abs(x), std::abs(y))); };
            return a.n1 == b.n1 && a.n2 == b.n2 && close(a.d1, b.d1) && close(a.d2, b.d2) &&
                   close(a.center.x(), -b.center.x()) && close(a.center.y(), b.center.y()) &&
                   close(a.center.z(), b.center.z());
        }
    }

    // ---------------------------------------------------------------- ArrayGeometry

    ArrayGeometry::ArrayGeometry(int n1, int n2, double d1, double d2, const Vec3 &center,
                                 double rotation, double tilt)
        : n1_(n1), n2_(n2), d1_(d1), d2_(d2), center_(center), rotation_(rotation), tilt_(tilt)
    {
        check_counts_and_spacings(n1, n2, d1, d2, "ArrayGeometry");
        if (!center.allFinite() || !std::isfinite(rotation) || !std::isfinite(tilt))
            throw Error("ArrayGeometry: center and angles must be finite");
    }

    ArrayGeometry ArrayGeometry::linear(int n, double spacing, const Vec3 &center)
    {
        return ArrayGeometry(n, 1, spacing, spacing, center);
    }

    Vec3 ArrayGeometry::first_axis() const { return axis1(rotation_); }
    Vec3 ArrayGeometry::second_axis() const { return axis2(rotation_, tilt_); }

    ArrayGeometry ArrayGeometry::with_spacings(double d1, double d2) const
    {
        return ArrayGeometry(n1_, n2_, d1, d2, center_, rotation_, tilt_);
    }

    ArrayGeometry ArrayGeometry::with_counts(int n1, int n2) const
    {
        return ArrayGeometry(n1, n2, d1_, d2_, center_, rotation_, tilt_);
    }

    ArrayGeometry ArrayGeometry::with_center(const Vec3 &center) const
    {
        return ArrayGeometry(n1_, n2_, d1_, d2_, center, rotation_, tilt_);
    }

    Vec3 ArrayGeometry::local_position(int i1, int i2) const
    {
        return d1_ * centered(i1, n1_) * first_axis() + d2_ * centered(i2, n2_) * second_axis();
    }

    double ArrayGeometry::max_offset() const
    {
        // Corners are the farthest elements; the axes are orthonormal.
        const double h1 = 0.5 * (n1_ - 1) * d1_;
        const double h2 = 0.5 * (n2_ - 1) * d2_;
        return std::hypot(h1, h2);
    }

    // ------------------------------------------------------------ SubArrayPartition

    SubArrayPartition::SubArrayPartition(std::vector<SubArraySpec> subarrays, double rotation,
                                         double tilt, bool symmetric)
        : subarrays_(std::move(subarrays)), rotation_(rotation), tilt_(tilt), symmetric_(symmetric)
    {
        if (subarrays_.empty())
            throw Error("SubArrayPartition: at least one sub-array is required");
        for (const auto &s : subarrays_)
        {
            check_counts_and_spacings(s.n1, s.n2, s.d1, s.d2, "SubArrayPartition");
            if (!s.center.allFinite())
                throw Error("SubArrayPartition: sub-array centers must be finite");
        }
        if (symmetric_)
        {
            const std::size_t n = subarrays_.size();
            if (n % 2 != 0)
                throw Error("SubArrayPartition: a symmetric partition needs an even number of sub-arrays");
            for (std::size_t i = 0; i < n / 2; ++i)
                if (!mirrors(subarrays_[i], subarrays_[n - 1 - i]))
                    throw Error("SubArrayPartition: sub-array " + std::to_string(i + 1) +
                                " does not mirror sub-array " + std::to_string(n - i) + " about the yz-plane");
        }
    }

    SubArrayPartition SubArrayPartition::mirrored(const std::vector<SubArraySpec> &half, double rotation,
                                                  double tilt)
    {
        std::vector<SubArraySpec> all(half);
        for (auto it = half.rbegin(); it != half.rend(); ++it)
        {
            SubArraySpec m = *it;
            m.center.x() = -m.center.x();
            all.push_back(m);
        }
        return SubArrayPartition(std::move(all), rotation, tilt, true);
    }

    int SubArrayPartition::element_count() const
    {
        int total = 0;
        for (const auto &s : subarrays_)
            total += s.n1 * s.n2;
        return total;
    }

    ArrayGeometry SubArrayPartition::subarray_geometry(std::size_t i) const
    {
        const auto &s = subarrays_.at(i);
        return ArrayGeometry(s.n1, s.n2, s.d1, s.d2, s.center, rotation_, tilt_);
    }

    SubArrayPartition SubArrayPartition::with_spacing(std::size_t i, double d1, double d2) const
    {
        auto copy = subarrays_;
        copy.at(i).d1 = d1;
        copy.at(i).d2 = d2;
        if (symmetric_)
        {
            auto &m = copy[copy.size() - 1 - i];
            m.d1 = d1;
            m.d2 = d2;
        }
        return SubArrayPartition(std::move(copy), rotation_, tilt_, symmetric_);
    }

    // ------------------------------------------------------------------ Flattening

    std::size_t Flattening::size() const
    {
        if (blocks.empty())
            return 0;
        const auto &b = blocks.back();
        return b.offset + static_cast<std::size_t>(b.n1) * static_cast<std::size_t>(b.n2);
    }

    std::size_t Flattening::flatten(std::size_t block, int i1, int i2) const
    {
        const auto &b = blocks.at(block);
        if (i1 < 0 || i1 >= b.n1 || i2 < 0 || i2 >= b.n2)
            throw Error("Flattening: principal index out of range");
        return b.offset + static_cast<std::size_t>(i1) * b.n2 + static_cast<std::size_t>(i2);
    }

    Flattening::Index Flattening::unflatten(std::size_t index) const
    {
        if (index >= size())
            throw Error("Flattening: flat index out of range");
        auto it = std::upper_bound(blocks.begin(), blocks.end(), index,
                                   [](std::size_t v, const Block &b) { return v < b.offset; });
        const std::size_t bi = static_cast<std::size_t>(std::distance(blocks.begin(), it)) - 1;
        const std::size_t local = index - blocks[bi].offset;
        return {bi, static_cast<int>(local / blocks[bi].n2), static_cast<int>(local % blocks[bi].n2)};
    }

    // ------------------------------------------------------------------- Expansion

    namespace
    {
        void append_block(ElementLayout &layout, const ArrayGeometry &g)
        {
            layout.flattening.blocks.push_back({g.n1(), g.n2(), layout.positions.size()});
            for (int i1 = 0; i1 < g.n1(); ++i1)
                for (int i2 = 0; i2 < g.n2(); ++i2)
                    layout.positions.push_back(g.center() + g.local_position(i1, i2));
        }
    }

    ElementLayout expand_uniform(const ArrayGeometry &array)
    {
        ElementLayout layout;
        layout.positions.reserve(static_cast<std::size_t>(array.count()));
        append_block(layout, array);
        layout.center = array.center();
        return layout;
    }

    ElementLayout expand_partition(const SubArrayPartition &partition)
    {
        ElementLayout layout;
        layout.positions.reserve(static_cast<std::size_t>(partition.element_count()));
        Vec3 weighted = Vec3::Zero();
        for (std::size_t i = 0; i < partition.size(); ++i)
        {
            const auto g = partition.subarray_geometry(i);
            append_block(layout, g);
            weighted += g.count() * g.center();
        }
        layout.center = weighted / partition.element_count();
        return layout;
    }

    // ------------------------------------------------------------- Classification

    double paraxial_ratio(const ElementLayout &tx, const ElementLayout &rx)
    {
        if (tx.positions.empty() || rx.positions.empty())
            throw Error("classify_paraxial: layouts must be non-empty");
        const double separation = (rx.center - tx.center).norm();
        if (!(separation > 0.0))
            throw Error("classify_paraxial: array centers coincide (|c_o| = 0)");
        double worst = 0.0;
        for (const auto &p : tx.positions)
            worst = std::max(worst, (p - tx.center).norm());
        for (const auto &p : rx.positions)
            worst = std::max(worst, (p - rx.center).norm());
        return worst / separation;
    }

    Deployment classify_paraxial(const ElementLayout &tx, const ElementLayout &rx, double ratio_threshold)
    {
        if (!(ratio_threshold > 0.0 && ratio_threshold < 1.0))
            throw Error("classify_paraxial: threshold must lie in (0, 1)");
        return paraxial_ratio(tx, rx) <= ratio_threshold ? Deployment::Paraxial : Deployment::NonParaxial;
    }
}
