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

#ifndef NFMIMO_PARALLEL_HPP
#define NFMIMO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nfmimo
{
    // Worker count: NFMIMO_THREADS when set to a positive integer, otherwise
    // the hardware concurrency (at least 1).
    unsigned worker_count();

    // Calls fn(i) for every i in [0, n) across worker_count() threads. Work is
    // split into contiguous chunks; callers write results by index, so the
    // outcome does not depend on scheduling. The first exception is rethrown.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);
}

#endif
