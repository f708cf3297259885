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

#ifndef NFMIMO_GEOMETRY_HPP
#define NFMIMO_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace nfmimo
{
    using Vec3 = Eigen::Vector3d;

    // Uniform planar array. Element (i1, i2) sits at
    //   center + d1 * (i1 - (n1-1)/2) * first_axis() + d2 * (i2 - (n2-1)/2) * second_axis()
    // where the axes are obtained by tilting (beta) and then rotating (alpha)
    // the xz-plane. The transmitter convention is center = 0, alpha = beta = 0.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(int n1, int n2, double d1, double d2,
                      const Vec3 &center = Vec3::Zero(),
                      double rotation = 0.0, double tilt = 0.0);

        // Linear array along the first principal direction (n2 = 1).
        static ArrayGeometry linear(int n, double spacing, const Vec3 &center = Vec3::Zero());

        int n1() const { return n1_; }
        int n2() const { return n2_; }
        int count() const { return n1_ * n2_; }
        double d1() const { return d1_; }
        double d2() const { return d2_; }
        const Vec3 &center() const { return center_; }
        double rotation() const { return rotation_; } // alpha [rad]
        double tilt() const { return tilt_; }         // beta [rad]

        Vec3 first_axis() const;  // (cos a, sin a, 0)
        Vec3 second_axis() const; // (-sin b sin a, sin b cos a, cos b)

        ArrayGeometry with_spacings(double d1, double d2) const;
        ArrayGeometry with_counts(int n1, int n2) const;
        ArrayGeometry with_center(const Vec3 &center) const;

        // Element offset from the array center for principal indices (0-based).
        Vec3 local_position(int i1, int i2) const;

        // Largest element distance from the array center.
        double max_offset() const;

    private:
        int n1_, n2_;
        double d1_, d2_;
        Vec3 center_;
        double rotation_, tilt_;
    };

    struct SubArraySpec
    {
        Vec3 center;
        int n1 = 1;
        int n2 = 1;
        double d1 = 0.0;
        double d2 = 0.0;
    };

    // Ordered set of sub-arrays forming one receiver. Rotation and tilt are
    // shared by every sub-array. A symmetric partition has an even number of
    // sub-arrays and sub-array i mirrors sub-array N+1-i about the yz-plane.
    class SubArrayPartition
    {
    public:
        SubArrayPartition(std::vector<SubArraySpec> subarrays,
                          double rotation = 0.0, double tilt = 0.0,
                          bool symmetric = false);

        // Mirror-symmetric partition built from its first half; the second half
        // is appended in reverse order with negated center x-coordinates.
        static SubArrayPartition mirrored(const std::vector<SubArraySpec> &half,
                                          double rotation = 0.0, double tilt = 0.0);

        const std::vector<SubArraySpec> &subarrays() const { return subarrays_; }
        std::size_t size() const { return subarrays_.size(); }
        const SubArraySpec &operator[](std::size_t i) const { return subarrays_[i]; }
        double rotation() const { return rotation_; }
        double tilt() const { return tilt_; }
        bool symmetric() const { return symmetric_; }
        int element_count() const;

        // The i-th sub-array as a stand-alone uniform array.
        ArrayGeometry subarray_geometry(std::size_t i) const;

        // Copy with sub-array i (and its mirror, when symmetric) respaced.
        SubArrayPartition with_spacing(std::size_t i, double d1, double d2) const;

    private:
        std::vector<SubArraySpec> subarrays_;
        double rotation_, tilt_;
        bool symmetric_;
    };

    // Row-major flattening over one or more blocks: inside block b, element
    // (i1, i2) has index offset(b) + i1 * n2(b) + i2.
    struct Flattening
    {
        struct Block
        {
            int n1;
            int n2;
            std::size_t offset;
        };
        std::vector<Block> blocks;

        struct Index
        {
            std::size_t block;
            int i1;
            int i2;
        };

        std::size_t size() const;
        std::size_t flatten(std::size_t block, int i1, int i2) const;
        Index unflatten(std::size_t index) const;
    };

    struct ElementLayout
    {
        std::vector<Vec3> positions;
        Vec3 center = Vec3::Zero(); // array reference point (mean position)
        Flattening flattening;

        std::size_t size() const { return positions.size(); }
    };

    ElementLayout expand_uniform(const ArrayGeometry &array);
    ElementLayout expand_partition(const SubArrayPartition &partition);

    enum class Deployment
    {
        Paraxial,
        NonParaxial
    };

    inline constexpr double default_paraxial_threshold = 0.1;

    // Paraxial iff every element of both layouts lies within
    // threshold * |c_o| of its own array center, c_o being the center offset.
    Deployment classify_paraxial(const ElementLayout &tx, const ElementLayout &rx,
                                 double ratio_threshold = default_paraxial_threshold);

    // max element offset / |c_o| over both layouts.
    double paraxial_ratio(const ElementLayout &tx, const ElementLayout &rx);
}

#endif
