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

#ifndef NFMIMO_CLI_HPP
#define NFMIMO_CLI_HPP

#include <iosfwd>

namespace nfmimo::cli
{
    enum ExitCode : int
    {
        ok = 0,
        failure = 1,
        config_error = 2,
        infeasible = 3
    };

    // Full command-line front end; argv[0] is the program name.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
