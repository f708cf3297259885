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

#ifndef NFMIMO_ERROR_HPP
#define NFMIMO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nfmimo
{
    // Raised when an input violates a documented precondition (bad geometry,
    // coincident elements, malformed grid, ...). Infeasible designs are not
    // errors; they are reported through the solution structs.
    class Error : public std::runtime_error
    {
    public:
        explicit Error(const std::string &what) : std::runtime_error(what) {}
    };

    // Raised by configuration parsing and validation.
    class ConfigError : public Error
    {
    public:
        explicit ConfigError(const std::string &what) : Error(what) {}
    };
}

#endif
