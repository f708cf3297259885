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

#include "nfmimo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace nfmimo
{
    unsigned worker_count()
    {
        if (const char *env = std::getenv("NFMIMO_THREADS"))
        {
            try
            {
                const long v = std::stol(env);
                if (v > 0)
                    return static_cast<unsigned>(std::min<long>(v, 1024));
            }
            catch (const std::exception &)
            {
                // Malformed value: fall back to the hardware default.
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
    {
        if (n == 0)
            return;
        const std::size_t workers = std::min<std::size_t>(worker_count(), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::exception_ptr failure;
        std::mutex guard;
        std::atomic<bool> stop{false};
        auto run = [&](std::size_t lo, std::size_t hi)
        {
            try
            {
                for (std::size_t i = lo; i < hi && !stop.load(std::memory_order_relaxed); ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure)
                    failure = std::current_exception();
                stop = true;
            }
        };

        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 1; w < workers; ++w)
        {
            const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
            if (lo < hi)
                pool.emplace_back(run, lo, hi);
        }
        run(0, std::min(n, chunk));
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}
