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

#ifndef NFMIMO_WAVEBAND_HPP
#define NFMIMO_WAVEBAND_HPP

namespace nfmimo
{
    inline constexpr double speed_of_light = 299792458.0; // [m/s]
    inline constexpr double pi = 3.14159265358979323846;

    // Carrier description. Wavelength and wavenumber are derived from the
    // carrier frequency and cached; all three are strictly positive.
    class Waveband
    {
    public:
        static Waveband from_frequency(double frequency_hz);
        static Waveband from_ghz(double frequency_ghz) { return from_frequency(frequency_ghz * 1e9); }

        // Convenience for analytic tests: a carrier whose wavelength is `lambda` meters.
        static Waveband from_wavelength(double lambda);

        double frequency() const { return frequency_; }   // [Hz]
        double wavelength() const { return wavelength_; } // [m]
        double wavenumber() const { return wavenumber_; } // [rad/m]

        // Length conversions between meters and multiples of the wavelength.
        double to_lambda(double meters) const { return meters / wavelength_; }
        double from_lambda(double multiples) const { return multiples * wavelength_; }

        bool operator==(const Waveband &) const = default;

    private:
        Waveband(double f, double lambda);

        double frequency_;
        double wavelength_;
        double wavenumber_;
    };
}

#endif
