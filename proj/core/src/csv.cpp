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

#include "nfmimo/csv.hpp"
#include "nfmimo/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nfmimo
{
    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    }

    void CsvTable::add_row(std::vector<double> row)
    {
        if (row.size() != columns.size())
            throw Error("CsvTable: row has " + std::to_string(row.size()) + " cells, expected " +
                        std::to_string(columns.size()));
        rows.push_back(std::move(row));
    }

    std::size_t CsvTable::column_index(const std::string &name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw Error("CsvTable: no column named '" + name + "'");
    }

    std::vector<double> CsvTable::column(const std::string &name) const
    {
        const auto c = column_index(name);
        std::vector<double> out;
        out.reserve(rows.size());
        for (const auto &r : rows)
            out.push_back(r[c]);
        return out;
    }

    void CsvTable::write(std::ostream &out) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i];
        out << '\n';
        for (const auto &r : rows)
        {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << (i ? "," : "") << format_number(r[i]);
            out << '\n';
        }
    }

    void CsvTable::save(const std::filesystem::path &path) const
    {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot write " + path.string());
        write(f);
        if (!f)
            throw Error("write failed for " + path.string());
    }

    CsvTable CsvTable::read(std::istream &in)
    {
        CsvTable t;
        std::string line;
        if (!std::getline(in, line))
            throw Error("CsvTable: empty input");
        std::istringstream hs(line);
        for (std::string cell; std::getline(hs, cell, ',');)
            t.columns.push_back(cell);
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::vector<double> row;
            std::istringstream rs(line);
            for (std::string cell; std::getline(rs, cell, ',');)
            {
                if (cell == "nan")
                    row.push_back(std::nan(""));
                else
                {
                    try
                    {
                        row.push_back(std::stod(cell));
                    }
                    catch (const std::exception &)
                    {
                        throw Error("CsvTable: non-numeric cell '" + cell + "'");
                    }
                }
            }
            t.add_row(std::move(row));
        }
        return t;
    }

    CsvTable CsvTable::load(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw Error("cannot read " + path.string());
        return read(f);
    }

    CsvTable matrix_table(const Eigen::MatrixXd &m)
    {
        CsvTable t;
        t.columns.push_back("row");
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            t.columns.push_back("c" + std::to_string(c + 1));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
        {
            std::vector<double> row{double(r + 1)};
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                row.push_back(m(r, c));
            t.add_row(std::move(row));
        }
        return t;
    }
}
