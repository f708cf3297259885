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

#ifndef NFMIMO_NONPARAXIAL_HPP
#define NFMIMO_NONPARAXIAL_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/waveband.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace nfmimo
{
    // Per-sub-array linear phase slopes and Dirichlet arguments.
    //   eta_a^i     = 2 (c_i . e_a^t) d_a^t / (lambda |c_i|)
    //   gamma_ab^i  = tau_ab^i M_a^i d_a^{r,i} d_b^t / (lambda |c_i|)
    // with c_i the offset of sub-array i from the transmitter center and
    // tau_ab^i = e_a^r . e_b^t - (c^_i . e_a^r)(c^_i . e_b^t).
    struct EtaGamma
    {
        std::vector<double> eta_x;
        std::vector<double> eta_z;
        std::vector<Eigen::Matrix2d> gamma;
        std::vector<double> distance; // |c_i| [m]
    };

    EtaGamma compute_eta_gamma(const ArrayGeometry &tx, const SubArrayPartition &p, const Waveband &w);

    // Generalized orthogonality condition: for every transmit index difference
    // (du1, du2) != 0,
    //   | sum_i |c_i|^-2 exp(j pi (eta_x du1 + eta_z du2)) D(.., M1^i) D(.., M2^i) |
    // normalized by sum_i M^i |c_i|^-2. Returns the largest value.
    double nonparaxial_orthogonality_residual(const ArrayGeometry &tx, const SubArrayPartition &p,
                                              const Waveband &w);

    // Solved broadside linear receiver made of mirror pairs of sub-arrays. Pair
    // i (0-based) has its outer member at +x_center[i]; pair 0 is outermost.
    struct NonParaxialSolution
    {
        bool feasible = false;
        bool unique = true; // no competing admissible root was found
        std::vector<int> counts;        // M1^i per pair member
        std::vector<double> eta;        // |eta_x^i|
        std::vector<double> gamma;      // gamma_11^i
        std::vector<double> x_center;   // |x_o^{r,i}| [m]
        std::vector<double> spacing;    // d1^{r,i} [m]
        std::vector<int> min_counts;    // ceil(gamma_11^i (L1 - 1) + 1e-9)
        std::vector<std::string> diagnostics;
        double y_o = 0.0;     // [m]
        double delta_t = 0.0; // [m]
        int l1 = 0;

        std::size_t pairs() const { return eta.size(); }
        int total_count() const;
        // Full mirrored partition in receiver order; throws Error if infeasible.
        SubArrayPartition partition() const;
    };

    NonParaxialSolution solve_two_subarrays(const ArrayGeometry &tx, int m1, double y_o, const Waveband &w);

    NonParaxialSolution solve_four_subarrays(const ArrayGeometry &tx, int m11, int m12, double y_o,
                                             const Waveband &w);

    // Symmetric even-sized partition; `counts` lists all N_r sub-array sizes.
    NonParaxialSolution solve_chain(const ArrayGeometry &tx, const std::vector<int> &counts, double y_o,
                                    const Waveband &w);

    // Coefficients {c3, c2, c1, c0} of the four-sub-array cubic in e = |eta_x^1|
    // with b = (2 d^t / lambda)^2.
    std::array<double, 4> four_subarray_cubic(int m11, int m12, double b);

    // Real roots of c3 x^3 + c2 x^2 + c1 x + c0 by Cardano's formula, each
    // refined with Newton steps, ascending.
    std::vector<double> cardano_roots(const std::array<double, 4> &c);

    // Bracketed bisection; f(lo) and f(hi) must differ in sign.
    double bisect(const std::function<double(double)> &f, double lo, double hi, double tol = 1e-15);

    // Every real root in (lo, hi) found by sign-change scanning and bisection.
    std::vector<double> bracketed_roots(const std::function<double(double)> &f, double lo, double hi,
                                        int samples = 4000);

    // Largest violation of the defining equations of a solution: boundary
    // conditions, link conditions between consecutive pairs, and the
    // center/spacing conversions. Relative to the size of each term.
    double defining_equation_residual(const NonParaxialSolution &s, const Waveband &w);

    struct ParaxialLimitReport
    {
        double paraxial_spacing = 0.0; // lambda |c_o| / (M1 d^t) [m]
        std::vector<double> solved_spacing;
        std::vector<double> limit_spacing;      // re-solved with |c_i| -> |c_o|, tau -> 1
        std::vector<double> limit_center;       // |x^{r,i}| of the re-solved design
        std::vector<double> uniform_center;     // center of pair i inside a uniform array
        std::vector<double> solved_deviation;   // |solved / paraxial - 1|
        std::vector<double> limit_deviation;    // |limit / paraxial - 1|
        double max_solved_deviation = 0.0;
        double max_limit_deviation = 0.0;
    };

    ParaxialLimitReport paraxial_limit_check(const NonParaxialSolution &s, const Waveband &w);

    // CSV: Nr,i,M1_i,x_center_lam,delta_r_lam,eta,gamma,feasible,min_count
    // One row per sub-array, i is 1-based in receiver order.
    void write_nonparaxial_csv_header(std::ostream &out);
    void write_nonparaxial_csv_rows(std::ostream &out, const NonParaxialSolution &s, const Waveband &w);
}

#endif
