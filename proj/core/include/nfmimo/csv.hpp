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

#ifndef NFMIMO_CSV_HPP
#define NFMIMO_CSV_HPP

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nfmimo
{
    // Shortest round-trip decimal form (17 significant digits), "nan"/"inf"
    // for non-finite values.
    std::string format_number(double v);

    // Numeric table with named columns.
    struct CsvTable
    {
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;

        void add_row(std::vector<double> row); // throws Error on a width mismatch
        std::size_t column_index(const std::string &name) const;
        std::vector<double> column(const std::string &name) const;

        void write(std::ostream &out) const;
        void save(const std::filesystem::path &path) const;
        static CsvTable read(std::istream &in);
        static CsvTable load(const std::filesystem::path &path);
    };

    // Square or rectangular matrix, header "row,c1,...,cN", rows numbered from 1.
    CsvTable matrix_table(const Eigen::MatrixXd &m);
}

#endif
