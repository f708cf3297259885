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

#include "nfmimo/waveband.hpp"
#include "nfmimo/error.hpp"

#include <cmath>
#include <string>

namespace nfmimo
{
    Waveband::Waveband(double f, double lambda)
        : frequency_(f), wavelength_(lambda), wavenumber_(2.0 * pi / lambda)
    {
    }

    Waveband Waveband::from_frequency(double frequency_hz)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw Error("Waveband: carrier frequency must be positive and finite, got " + std::to_string(frequency_hz));
        return Waveband(frequency_hz, speed_of_light / frequency_hz);
    }

    Waveband Waveband::from_wavelength(double lambda)
    {
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw Error("Waveband: wavelength must be positive and finite, got " + std::to_string(lambda));
        return Waveband(speed_of_light / lambda, lambda);
    }
}
