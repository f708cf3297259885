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

#include "nfmimo/paraxial.hpp"
#include "nfmimo/dirichlet.hpp"
#include "nfmimo/error.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace nfmimo
{
    TauTerms compute_tau(const Vec3 &co, double a, double b)
    {
        const double c2 = co.squaredNorm();
        if (!(c2 > 0.0))
            throw Error("compute_tau: array centers coincide (|c_o| = 0)");
        const double x = co.x(), y = co.y(), z = co.z();
        TauTerms t;
        t.tau1 = (x * std::cos(a) + y * std::sin(a)) / c2;
        t.tau2 = (-x * std::sin(b) * std::sin(a) + y * std::sin(b) * std::cos(a) + z * std::cos(b)) / c2;
        t.tau(0, 0) = std::cos(a) - x * t.tau1;
        t.tau(0, 1) = -z * t.tau1;
        t.tau(1, 0) = -std::sin(b) * std::sin(a) - x * t.tau2;
        t.tau(1, 1) = std::cos(b) - z * t.tau2;
        return t;
    }

    ParaxialCoefficients compute_tau_gamma(const ArrayGeometry &tx, const ArrayGeometry &rx, const Waveband &w)
    {
        const Vec3 co = rx.center() - tx.center();
        const auto t = compute_tau(co, rx.rotation(), rx.tilt());
        const double denom = w.wavelength() * co.norm();
        const double M[2] = {double(rx.n1()), double(rx.n2())};
        const double dr[2] = {rx.d1(), rx.d2()};
        const double dt[2] = {tx.d1(), tx.d2()};

        ParaxialCoefficients c;
        c.tau = t.tau;
        c.tau1 = t.tau1;
        c.tau2 = t.tau2;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                c.gamma(a, b) = t.tau(a, b) * M[a] * dr[a] * dt[b] / denom;
        return c;
    }

    double paraxial_condition_value(const Eigen::Matrix2d &gamma, int M1, int M2, int du1, int du2)
    {
        const double arg1 = gamma(0, 0) * du1 + gamma(0, 1) * du2;
        const double arg2 = gamma(1, 0) * du1 + gamma(1, 1) * du2;
        return dirichlet_ratio(arg1, M1) * dirichlet_ratio(arg2, M2);
    }

    OrthogonalityCheck verify_orthogonality_condition(const Eigen::Matrix2d &gamma, int L1, int L2, int M1,
                                                      int M2)
    {
        if (L1 < 1 || L2 < 1 || M1 < 1 || M2 < 1)
            throw Error("verify_orthogonality_condition: counts must be >= 1");
        const double full = double(M1) * double(M2);
        OrthogonalityCheck out;
        for (int du1 = -(L1 - 1); du1 <= L1 - 1; ++du1)
            for (int du2 = -(L2 - 1); du2 <= L2 - 1; ++du2)
            {
                if (du1 == 0 && du2 == 0)
                    continue;
                const double mag = std::abs(paraxial_condition_value(gamma, M1, M2, du1, du2)) / full;
                out.max_magnitude = std::max(out.max_magnitude, mag);
                if (mag >= 1e-9)
                {
                    out.orthogonal = false;
                    out.violations.push_back({du1, du2, mag});
                }
            }
        return out;
    }

    const char *to_string(VanishingOffDiagonal v)
    {
        switch (v)
        {
        case VanishingOffDiagonal::None:
            return "none";
        case VanishingOffDiagonal::Tau12:
            return "tau12";
        case VanishingOffDiagonal::Tau21:
            return "tau21";
        case VanishingOffDiagonal::Both:
            return "both";
        }
        return "?";
    }

    ParaxialSolution solve_spacings(const ArrayGeometry &tx, const ArrayGeometry &rx_template, const Waveband &w,
                                    int multiple)
    {
        if (multiple < 1)
            throw Error("solve_spacings: multiple must be >= 1");
        const Vec3 co = rx_template.center() - tx.center();
        const auto t = compute_tau(co, rx_template.rotation(), rx_template.tilt());

        ParaxialSolution s;
        s.multiple = multiple;
        const double scale = t.tau.cwiseAbs().maxCoeff();
        const double tol = 1e-9 * scale;
        const bool z12 = std::abs(t.tau(0, 1)) <= tol;
        const bool z21 = std::abs(t.tau(1, 0)) <= tol;
        s.zero_offdiag = z12 && z21 ? VanishingOffDiagonal::Both
                         : z12      ? VanishingOffDiagonal::Tau12
                         : z21      ? VanishingOffDiagonal::Tau21
                                    : VanishingOffDiagonal::None;

        const int M[2] = {rx_template.n1(), rx_template.n2()};
        const int L[2] = {tx.n1(), tx.n2()};
        s.counts_ok1 = M[0] >= multiple * L[0];
        s.counts_ok2 = M[1] >= multiple * L[1];

        std::ostringstream why;
        if (s.zero_offdiag == VanishingOffDiagonal::None)
        {
            why << "neither tau12 nor tau21 vanishes (tau12 = " << t.tau(0, 1) << ", tau21 = " << t.tau(1, 0)
                << ")";
            s.diagnostics.push_back(why.str());
            why.str({});
        }
        for (int a = 0; a < 2; ++a)
            if (std::abs(t.tau(a, a)) <= tol)
            {
                why << "tau" << a + 1 << a + 1 << " vanishes; deployment excluded";
                s.diagnostics.push_back(why.str());
                why.str({});
            }
        if (!s.counts_ok1)
            s.diagnostics.push_back("M1 < " + std::to_string(multiple) + " * L1 (" + std::to_string(M[0]) + " < " +
                                    std::to_string(multiple * L[0]) + ")");
        if (!s.counts_ok2)
            s.diagnostics.push_back("M2 < " + std::to_string(multiple) + " * L2 (" + std::to_string(M[1]) + " < " +
                                    std::to_string(multiple * L[1]) + ")");

        const double lc = w.wavelength() * co.norm();
        const double dt[2] = {tx.d1(), tx.d2()};
        double dr[2];
        for (int a = 0; a < 2; ++a)
        {
            const double taa = std::abs(t.tau(a, a));
            dr[a] = taa > tol ? multiple * lc / (M[a] * taa * dt[a]) : std::numeric_limits<double>::quiet_NaN();
        }
        s.d1_r = dr[0];
        s.d2_r = dr[1];
        s.feasible = s.diagnostics.empty();
        if (std::isfinite(dr[0]) && std::isfinite(dr[1]))
            s.coefficients = compute_tau_gamma(tx, rx_template.with_spacings(dr[0], dr[1]), w);
        else
        {
            s.coefficients.tau = t.tau;
            s.coefficients.tau1 = t.tau1;
            s.coefficients.tau2 = t.tau2;
            s.coefficients.gamma.setConstant(std::numeric_limits<double>::quiet_NaN());
        }
        return s;
    }

    void write_paraxial_csv_header(std::ostream &out)
    {
        out << "M1,M2,L1,L2,delta_t1_lam,delta_t2_lam,delta_r1_lam,delta_r2_lam,feasible\n";
    }

    void write_paraxial_csv_row(std::ostream &out, const ArrayGeometry &tx, const ArrayGeometry &rx_template,
                                const ParaxialSolution &s, const Waveband &w)
    {
        const auto prec = out.precision(17);
        out << rx_template.n1() << ',' << rx_template.n2() << ',' << tx.n1() << ',' << tx.n2() << ','
            << w.to_lambda(tx.d1()) << ',' << w.to_lambda(tx.d2()) << ',' << w.to_lambda(s.d1_r) << ','
            << w.to_lambda(s.d2_r) << ',' << (s.feasible ? 1 : 0) << '\n';
        out.precision(prec);
    }
}
