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

#ifndef NFMIMO_PARAXIAL_HPP
#define NFMIMO_PARAXIAL_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/waveband.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace nfmimo
{
    // Projection coefficients of a receiver with rotation alpha and tilt beta
    // whose center sits at `center_offset` from the transmitter center:
    //   tau1 = (x cos a + y sin a) / |c|^2
    //   tau2 = (-x sin b sin a + y sin b cos a + z cos b) / |c|^2
    //   tau  = [[cos a - x tau1,          -z tau1],
    //           [-sin b sin a - x tau2,   cos b - z tau2]]
    struct TauTerms
    {
        Eigen::Matrix2d tau;
        double tau1 = 0.0;
        double tau2 = 0.0;
    };

    TauTerms compute_tau(const Vec3 &center_offset, double rotation, double tilt);

    struct ParaxialCoefficients
    {
        Eigen::Matrix2d tau;
        double tau1 = 0.0;
        double tau2 = 0.0;
        // gamma(a, b) = tau(a, b) * M_a * d_a^r * d_b^t / (lambda |c_o|): the
        // phase slope, over receive direction a, of a transmit step along b.
        Eigen::Matrix2d gamma;
    };

    ParaxialCoefficients compute_tau_gamma(const ArrayGeometry &tx, const ArrayGeometry &rx, const Waveband &w);

    struct OrthogonalityViolation
    {
        int du1 = 0; // u1 - v1
        int du2 = 0; // u2 - v2
        double magnitude = 0.0; // |product of Dirichlet ratios| / (M1 M2)
    };

    struct OrthogonalityCheck
    {
        bool orthogonal = true;
        double max_magnitude = 0.0;
        std::vector<OrthogonalityViolation> violations;
    };

    // Product of Dirichlet ratios for one transmit index difference; equals
    // sum_m conj(P(m,u)) P(m,v) under the quartic model.
    double paraxial_condition_value(const Eigen::Matrix2d &gamma, int M1, int M2, int du1, int du2);

    // Evaluates every difference pair (du1, du2) != (0, 0), |du_a| <= L_a - 1.
    // Orthogonal iff each magnitude is below 1e-9 relative to M1 M2.
    OrthogonalityCheck verify_orthogonality_condition(const Eigen::Matrix2d &gamma, int L1, int L2, int M1,
                                                      int M2);
    inline OrthogonalityCheck verify_orthogonality_condition(const ParaxialCoefficients &c, int L1, int L2,
                                                             int M1, int M2)
    {
        return verify_orthogonality_condition(c.gamma, L1, L2, M1, M2);
    }

    enum class VanishingOffDiagonal
    {
        None,
        Tau12,
        Tau21,
        Both
    };

    const char *to_string(VanishingOffDiagonal v);

    struct ParaxialSolution
    {
        double d1_r = 0.0; // [m]
        double d2_r = 0.0; // [m]
        bool feasible = false;
        bool counts_ok1 = false; // M1 >= n L1
        bool counts_ok2 = false; // M2 >= n L2
        VanishingOffDiagonal zero_offdiag = VanishingOffDiagonal::None;
        ParaxialCoefficients coefficients; // gamma at the solved spacings
        std::vector<std::string> diagnostics;
        int multiple = 1;
    };

    // Receive spacings d_a^r = n lambda |c_o| / (M_a |tau_aa| d_a^t) for the
    // template's counts, center and orientation; n = `multiple`.
    ParaxialSolution solve_spacings(const ArrayGeometry &tx, const ArrayGeometry &rx_template, const Waveband &w,
                                    int multiple = 1);

    // CSV: M1,M2,L1,L2,delta_t1_lam,delta_t2_lam,delta_r1_lam,delta_r2_lam,feasible
    void write_paraxial_csv_header(std::ostream &out);
    void write_paraxial_csv_row(std::ostream &out, const ArrayGeometry &tx, const ArrayGeometry &rx_template,
                                const ParaxialSolution &s, const Waveband &w);
}

#endif
