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

#ifndef NFMIMO_DIRICHLET_HPP
#define NFMIMO_DIRICHLET_HPP

namespace nfmimo
{
    // sin(pi x) / sin(pi x / n): the closed form of sum_{m} exp(j 2 pi x m_c / n)
    // over n centered indices. At integer multiples of n the 0/0 is replaced
    // by its limit n cos(pi x) / cos(pi x / n) = +-n.
    double dirichlet_ratio(double x, int n);
}

#endif
