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

#include "nfmimo/dirichlet.hpp"
#include "nfmimo/waveband.hpp"

#include <cmath>

namespace nfmimo
{
    double dirichlet_ratio(double x, int n)
    {
        const double r = x / n;
        if (std::abs(r - std::round(r)) <= 1e-12)
            return n * std::cos(pi * x) / std::cos(pi * r);
        return std::sin(pi * x) / std::sin(pi * r);
    }
}
