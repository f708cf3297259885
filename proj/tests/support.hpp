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

#ifndef NFMIMO_TESTS_SUPPORT_HPP
#define NFMIMO_TESTS_SUPPORT_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/waveband.hpp"

#include <Eigen/Core>

#include <complex>
#include <filesystem>
#include <random>
#include <string>

#include <unistd.h>

namespace nfmimo::test
{
    inline const Waveband band = Waveband::from_ghz(28.0);
    inline double lam(double multiples) { return band.from_lambda(multiples); }

    // Fresh scratch directory under the system temp path.
    inline std::filesystem::path scratch_dir(const std::string &tag)
    {
        static int serial = 0;
        auto p = std::filesystem::temp_directory_path() /
                 ("nfmimo_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(serial++));
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }

    // Wrapped phase difference in (-pi, pi].
    inline double phase_gap(std::complex<double> a, std::complex<double> b) { return std::abs(std::arg(a / b)); }

    inline Eigen::MatrixXcd random_matrix(std::mt19937_64 &rng, int rows, int cols)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        Eigen::MatrixXcd h(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                h(r, c) = {n(rng), n(rng)};
        return h;
    }
}

#endif
