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

#ifndef NFMIMO_CONFIG_HPP
#define NFMIMO_CONFIG_HPP

#include "nfmimo/geometry.hpp"
#include "nfmimo/grid_search.hpp"
#include "nfmimo/waveband.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nfmimo
{
    // All lengths are wavelength multiples, angles radians unless the name
    // says otherwise, frequency in GHz.
    struct ArrayConfig
    {
        int n1 = 1;
        int n2 = 1;
        double d1_lam = 0.5;
        double d2_lam = 0.5;
        std::array<double, 3> center_lam{0.0, 0.0, 0.0};
        double rotation_rad = 0.0;
        double tilt_rad = 0.0;

        bool operator==(const ArrayConfig &) const = default;
        ArrayGeometry geometry(const Waveband &w) const;
    };

    struct SubArrayConfig
    {
        std::array<double, 3> center_lam{0.0, 0.0, 0.0};
        int n1 = 1;
        int n2 = 1;
        double d1_lam = 0.5;
        double d2_lam = 0.5;

        bool operator==(const SubArrayConfig &) const = default;
    };

    // Either sub-array counts along the receiver's first axis (for the
    // non-paraxial designs) or fully specified sub-arrays.
    struct PartitionConfig
    {
        std::vector<int> counts;
        std::vector<SubArrayConfig> subarrays;

        bool operator==(const PartitionConfig &) const = default;
    };

    enum class SweepVariable
    {
        None,
        ElevationDeg,
        M1,
        DeltaTLam
    };

    struct SweepConfig
    {
        SweepVariable variable = SweepVariable::None;
        std::vector<double> values;

        bool operator==(const SweepConfig &) const = default;
    };

    enum class Strategy
    {
        Paraxial,
        TwoSub,
        FourSub,
        Chain,
        Grid1,
        Grid2
    };

    const char *to_string(Strategy s);
    const char *to_string(SweepVariable v);

    struct GridConfig
    {
        double min_lam = 0.5;
        double max_lam = 80.0;
        double step_lam = 0.25;
        GridObjective objective = GridObjective::Exact;

        bool operator==(const GridConfig &) const = default;
        GridAxis axis() const { return {min_lam, max_lam, step_lam}; }
    };

    struct OutputConfig
    {
        std::string dir = "out";
        bool plots = false;

        bool operator==(const OutputConfig &) const = default;
    };

    struct ExperimentConfig
    {
        std::string scenario = "custom";
        double frequency_ghz = 28.0;
        ArrayConfig transmitter;
        ArrayConfig receiver;
        std::optional<PartitionConfig> partition;
        SweepConfig sweep;
        std::vector<double> delta_t_lam; // transmit spacings drawn as separate series
        std::vector<Strategy> strategies;
        GridConfig grid;
        double paraxial_threshold = default_paraxial_threshold;
        double noise_power_w = 1e-6;
        double total_power_w = 1.0;
        OutputConfig output;

        bool operator==(const ExperimentConfig &) const = default;

        Waveband waveband() const { return Waveband::from_ghz(frequency_ghz); }
        bool uses(Strategy s) const;
        // Receiver partition in meters; throws ConfigError without one.
        SubArrayPartition partition_geometry() const;
    };

    // Parsing validates ranges and cross-field rules and throws ConfigError
    // with the offending field named. Unknown keys are rejected.
    ExperimentConfig parse_config(const std::string &json_text);
    std::string serialize_config(const ExperimentConfig &cfg);
    void validate(const ExperimentConfig &cfg);

    // A file holds either one configuration or {"runs": {name: config, ...}}.
    std::map<std::string, ExperimentConfig> load_config_file(const std::filesystem::path &path);
}

#endif
