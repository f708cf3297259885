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

#include "nfmimo/config.hpp"
#include "nfmimo/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nfmimo
{
    using json = nlohmann::ordered_json;

    namespace
    {
        [[noreturn]] void fail(const std::string &field, const std::string &msg)
        {
            throw ConfigError(field + ": " + msg);
        }

        void only_keys(const json &j, const std::string &where, std::initializer_list<const char *> keys)
        {
            if (!j.is_object())
                fail(where, "expected an object");
            std::set<std::string> allowed(keys.begin(), keys.end());
            for (auto it = j.begin(); it != j.end(); ++it)
                if (!allowed.count(it.key()))
                    fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
        }

        template <typename T>
        T get(const json &j, const char *key, const std::string &where, T fallback)
        {
            if (!j.contains(key))
                return fallback;
            try
            {
                return j.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                fail(where.empty() ? key : where + "." + key, std::string("wrong type (") + e.what() + ")");
            }
        }

        std::array<double, 3> vec3(const json &j, const char *key, const std::string &where)
        {
            const auto v = get<std::vector<double>>(j, key, where, {0.0, 0.0, 0.0});
            if (v.size() != 3)
                fail(where + "." + key, "expected three coordinates");
            return {v[0], v[1], v[2]};
        }

        ArrayConfig parse_array(const json &j, const std::string &where)
        {
            only_keys(j, where, {"n1", "n2", "d1_lam", "d2_lam", "center_lam", "rotation_rad", "tilt_rad"});
            ArrayConfig a;
            a.n1 = get(j, "n1", where, a.n1);
            a.n2 = get(j, "n2", where, a.n2);
            a.d1_lam = get(j, "d1_lam", where, a.d1_lam);
            a.d2_lam = get(j, "d2_lam", where, a.d1_lam);
            a.center_lam = vec3(j, "center_lam", where);
            a.rotation_rad = get(j, "rotation_rad", where, 0.0);
            a.tilt_rad = get(j, "tilt_rad", where, 0.0);
            return a;
        }

        json dump_array(const ArrayConfig &a)
        {
            return json{{"n1", a.n1},
                        {"n2", a.n2},
                        {"d1_lam", a.d1_lam},
                        {"d2_lam", a.d2_lam},
                        {"center_lam", a.center_lam},
                        {"rotation_rad", a.rotation_rad},
                        {"tilt_rad", a.tilt_rad}};
        }

        template <typename E, std::size_t N>
        E parse_enum(const std::string &text, const std::array<E, N> &values, const std::string &where)
        {
            for (E v : values)
                if (text == to_string(v))
                    return v;
            std::string options;
            for (E v : values)
                options += std::string(options.empty() ? "" : ", ") + to_string(v);
            fail(where, "unknown value '" + text + "' (expected one of " + options + ")");
        }

        constexpr std::array<Strategy, 6> all_strategies{Strategy::Paraxial, Strategy::TwoSub, Strategy::FourSub,
                                                         Strategy::Chain,    Strategy::Grid1,  Strategy::Grid2};
        constexpr std::array<SweepVariable, 3> all_sweeps{SweepVariable::ElevationDeg, SweepVariable::M1,
                                                          SweepVariable::DeltaTLam};
        constexpr std::array<GridObjective, 2> all_objectives{GridObjective::Exact, GridObjective::QuarticSubArray};

        void check_array(const ArrayConfig &a, const std::string &where)
        {
            if (a.n1 < 1 || a.n2 < 1)
                fail(where, "element counts must be >= 1");
            if (!(a.d1_lam > 0.0) || !(a.d2_lam > 0.0) || !std::isfinite(a.d1_lam) || !std::isfinite(a.d2_lam))
                fail(where, "spacings must be positive and finite");
            for (double c : a.center_lam)
                if (!std::isfinite(c))
                    fail(where + ".center_lam", "must be finite");
            if (!std::isfinite(a.rotation_rad) || !std::isfinite(a.tilt_rad))
                fail(where, "angles must be finite");
        }

        bool broadside_linear(const ArrayConfig &a)
        {
            return a.n2 == 1 && a.rotation_rad == 0.0 && a.tilt_rad == 0.0;
        }

        bool mirror_counts(const std::vector<int> &c)
        {
            if (c.empty() || c.size() % 2)
                return false;
            for (std::size_t i = 0; i < c.size() / 2; ++i)
                if (c[i] != c[c.size() - 1 - i])
                    return false;
            return true;
        }
    }

    const char *to_string(Strategy s)
    {
        switch (s)
        {
        case Strategy::Paraxial: return "Paraxial";
        case Strategy::TwoSub: return "TwoSub";
        case Strategy::FourSub: return "FourSub";
        case Strategy::Chain: return "Chain";
        case Strategy::Grid1: return "Grid1";
        case Strategy::Grid2: return "Grid2";
        }
        return "?";
    }

    const char *to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::None: return "none";
        case SweepVariable::ElevationDeg: return "elevation_deg";
        case SweepVariable::M1: return "m1";
        case SweepVariable::DeltaTLam: return "delta_t_lam";
        }
        return "?";
    }

    ArrayGeometry ArrayConfig::geometry(const Waveband &w) const
    {
        const Vec3 c(w.from_lambda(center_lam[0]), w.from_lambda(center_lam[1]), w.from_lambda(center_lam[2]));
        return ArrayGeometry(n1, n2, w.from_lambda(d1_lam), w.from_lambda(d2_lam), c, rotation_rad, tilt_rad);
    }

    bool ExperimentConfig::uses(Strategy s) const
    {
        return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
    }

    SubArrayPartition ExperimentConfig::partition_geometry() const
    {
        if (!partition || partition->subarrays.empty())
            throw ConfigError("partition.subarrays: required here");
        const auto w = waveband();
        std::vector<SubArraySpec> subs;
        for (const auto &s : partition->subarrays)
            subs.push_back({Vec3(w.from_lambda(s.center_lam[0]), w.from_lambda(s.center_lam[1]),
                                 w.from_lambda(s.center_lam[2])),
                            s.n1, s.n2, w.from_lambda(s.d1_lam), w.from_lambda(s.d2_lam)});
        bool symmetric = subs.size() % 2 == 0;
        try
        {
            return SubArrayPartition(subs, receiver.rotation_rad, receiver.tilt_rad, symmetric);
        }
        catch (const Error &)
        {
            if (!symmetric)
                throw;
        }
        return SubArrayPartition(subs, receiver.rotation_rad, receiver.tilt_rad, false);
    }

    void validate(const ExperimentConfig &c)
    {
        if (!(c.frequency_ghz > 0.0) || !std::isfinite(c.frequency_ghz))
            fail("frequency_ghz", "must be positive");
        check_array(c.transmitter, "transmitter");
        check_array(c.receiver, "receiver");
        if (c.partition)
        {
            for (int n : c.partition->counts)
                if (n < 1)
                    fail("partition.counts", "counts must be >= 1");
            if (!c.partition->counts.empty() && !c.partition->subarrays.empty())
                fail("partition", "give either counts or subarrays, not both");
            if (c.partition->counts.empty() && c.partition->subarrays.empty())
                fail("partition", "needs counts or subarrays");
            for (std::size_t i = 0; i < c.partition->subarrays.size(); ++i)
            {
                const auto &s = c.partition->subarrays[i];
                const std::string where = "partition.subarrays[" + std::to_string(i) + "]";
                if (s.n1 < 1 || s.n2 < 1)
                    fail(where, "element counts must be >= 1");
                if (!(s.d1_lam > 0.0) || !(s.d2_lam > 0.0))
                    fail(where, "spacings must be positive");
            }
        }
        if (c.sweep.variable != SweepVariable::None && c.sweep.values.empty())
            fail("sweep.values", "must not be empty");
        if (c.sweep.variable == SweepVariable::None && !c.sweep.values.empty())
            fail("sweep.variable", "values given without a sweep variable");
        for (double v : c.sweep.values)
        {
            if (!std::isfinite(v))
                fail("sweep.values", "must be finite");
            if (c.sweep.variable == SweepVariable::M1 && (v < 1.0 || v != std::floor(v)))
                fail("sweep.values", "m1 values must be positive integers");
            if (c.sweep.variable == SweepVariable::DeltaTLam && !(v > 0.0))
                fail("sweep.values", "transmit spacings must be positive");
            if (c.sweep.variable == SweepVariable::ElevationDeg && !(std::abs(v) < 90.0))
                fail("sweep.values", "elevation must lie in (-90, 90) degrees");
        }
        for (double v : c.delta_t_lam)
            if (!(v > 0.0) || !std::isfinite(v))
                fail("delta_t_lam", "transmit spacings must be positive");

        const bool nonparaxial = c.uses(Strategy::TwoSub) || c.uses(Strategy::FourSub) || c.uses(Strategy::Chain);
        if (nonparaxial && (!broadside_linear(c.transmitter) || !broadside_linear(c.receiver)))
            fail("strategies", "TwoSub, FourSub and Chain need linear broadside arrays (n2 = 1, no rotation or tilt)");
        if (c.uses(Strategy::FourSub) && c.partition && !c.partition->counts.empty() &&
            (c.partition->counts.size() != 4 || !mirror_counts(c.partition->counts)))
            fail("partition.counts", "FourSub needs four mirror-symmetric counts");
        if (c.uses(Strategy::FourSub) && c.sweep.variable == SweepVariable::M1)
            for (double v : c.sweep.values)
                if (static_cast<long>(v) % 4 != 0)
                    fail("sweep.values", "FourSub needs m1 values that are multiples of 4");
        if (c.uses(Strategy::Chain) && (!c.partition || !mirror_counts(c.partition->counts)))
            fail("partition.counts", "Chain needs an even, mirror-symmetric list of counts");

        const auto &g = c.grid;
        if (!(g.min_lam > 0.0) || !(g.min_lam < g.max_lam) || !(g.step_lam > 0.0) || !std::isfinite(g.max_lam))
            fail("grid", "needs 0 < min_lam < max_lam and step_lam > 0");
        if (g.axis().points() > max_grid_points)
            fail("grid", "too many points along one axis");
        if (!(c.paraxial_threshold > 0.0 && c.paraxial_threshold < 1.0))
            fail("paraxial_threshold", "must lie in (0, 1)");
        if (!(c.noise_power_w > 0.0) || !(c.total_power_w > 0.0))
            fail("noise_power_w", "noise and total power must be positive");
        if (c.output.dir.empty())
            fail("output.dir", "must not be empty");
    }

    namespace
    {
        ExperimentConfig parse_object(const json &j)
        {
            only_keys(j, "",
                      {"scenario", "frequency_ghz", "transmitter", "receiver", "partition", "sweep", "delta_t_lam",
                       "strategies", "grid", "paraxial_threshold", "noise_power_w", "total_power_w", "output"});
            ExperimentConfig c;
            c.scenario = get(j, "scenario", "", c.scenario);
            c.frequency_ghz = get(j, "frequency_ghz", "", c.frequency_ghz);
            if (j.contains("transmitter"))
                c.transmitter = parse_array(j["transmitter"], "transmitter");
            if (j.contains("receiver"))
                c.receiver = parse_array(j["receiver"], "receiver");
            if (j.contains("partition"))
            {
                const auto &p = j["partition"];
                only_keys(p, "partition", {"counts", "subarrays"});
                PartitionConfig pc;
                pc.counts = get<std::vector<int>>(p, "counts", "partition", {});
                if (p.contains("subarrays"))
                {
                    if (!p["subarrays"].is_array())
                        fail("partition.subarrays", "expected an array");
                    for (std::size_t i = 0; i < p["subarrays"].size(); ++i)
                    {
                        const auto &s = p["subarrays"][i];
                        const std::string where = "partition.subarrays[" + std::to_string(i) + "]";
                        only_keys(s, where, {"center_lam", "n1", "n2", "d1_lam", "d2_lam"});
                        SubArrayConfig sc;
                        sc.center_lam = vec3(s, "center_lam", where);
                        sc.n1 = get(s, "n1", where, 1);
                        sc.n2 = get(s, "n2", where, 1);
                        sc.d1_lam = get(s, "d1_lam", where, 0.5);
                        sc.d2_lam = get(s, "d2_lam", where, sc.d1_lam);
                        pc.subarrays.push_back(sc);
                    }
                }
                c.partition = pc;
            }
            if (j.contains("sweep"))
            {
                const auto &s = j["sweep"];
                only_keys(s, "sweep", {"variable", "values"});
                c.sweep.variable = parse_enum(get<std::string>(s, "variable", "sweep", ""), all_sweeps, "sweep.variable");
                c.sweep.values = get<std::vector<double>>(s, "values", "sweep", {});
            }
            c.delta_t_lam = get<std::vector<double>>(j, "delta_t_lam", "", {});
            for (const auto &s : get<std::vector<std::string>>(j, "strategies", "", {}))
                c.strategies.push_back(parse_enum(s, all_strategies, "strategies"));
            if (j.contains("grid"))
            {
                const auto &g = j["grid"];
                only_keys(g, "grid", {"min_lam", "max_lam", "step_lam", "objective"});
                c.grid.min_lam = get(g, "min_lam", "grid", c.grid.min_lam);
                c.grid.max_lam = get(g, "max_lam", "grid", c.grid.max_lam);
                c.grid.step_lam = get(g, "step_lam", "grid", c.grid.step_lam);
                c.grid.objective = parse_enum(get<std::string>(g, "objective", "grid", "Exact"), all_objectives,
                                              "grid.objective");
            }
            c.paraxial_threshold = get(j, "paraxial_threshold", "", c.paraxial_threshold);
            c.noise_power_w = get(j, "noise_power_w", "", c.noise_power_w);
            c.total_power_w = get(j, "total_power_w", "", c.total_power_w);
            if (j.contains("output"))
            {
                const auto &o = j["output"];
                only_keys(o, "output", {"dir", "plots"});
                c.output.dir = get(o, "dir", "output", c.output.dir);
                c.output.plots = get(o, "plots", "output", c.output.plots);
            }
            validate(c);
            return c;
        }

        json to_json(const ExperimentConfig &c)
        {
            json j;
            j["scenario"] = c.scenario;
            j["frequency_ghz"] = c.frequency_ghz;
            j["transmitter"] = dump_array(c.transmitter);
            j["receiver"] = dump_array(c.receiver);
            if (c.partition)
            {
                json p = json::object();
                if (!c.partition->counts.empty())
                    p["counts"] = c.partition->counts;
                if (!c.partition->subarrays.empty())
                {
                    p["subarrays"] = json::array();
                    for (const auto &s : c.partition->subarrays)
                        p["subarrays"].push_back(json{{"center_lam", s.center_lam},
                                                      {"n1", s.n1},
                                                      {"n2", s.n2},
                                                      {"d1_lam", s.d1_lam},
                                                      {"d2_lam", s.d2_lam}});
                }
                j["partition"] = p;
            }
            if (c.sweep.variable != SweepVariable::None)
                j["sweep"] = json{{"variable", to_string(c.sweep.variable)}, {"values", c.sweep.values}};
            if (!c.delta_t_lam.empty())
                j["delta_t_lam"] = c.delta_t_lam;
            j["strategies"] = json::array();
            for (auto s : c.strategies)
                j["strategies"].push_back(to_string(s));
            j["grid"] = json{{"min_lam", c.grid.min_lam},
                             {"max_lam", c.grid.max_lam},
                             {"step_lam", c.grid.step_lam},
                             {"objective", to_string(c.grid.objective)}};
            j["paraxial_threshold"] = c.paraxial_threshold;
            j["noise_power_w"] = c.noise_power_w;
            j["total_power_w"] = c.total_power_w;
            j["output"] = json{{"dir", c.output.dir}, {"plots", c.output.plots}};
            return j;
        }

        json parse_text(const std::string &text)
        {
            try
            {
                return json::parse(text);
            }
            catch (const json::parse_error &e)
            {
                throw ConfigError(std::string("malformed JSON: ") + e.what());
            }
        }
    }

    ExperimentConfig parse_config(const std::string &text) { return parse_object(parse_text(text)); }

    std::string serialize_config(const ExperimentConfig &cfg) { return to_json(cfg).dump(2) + "\n"; }

    std::map<std::string, ExperimentConfig> load_config_file(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot read config file " + path.string());
        std::stringstream buf;
        buf << f.rdbuf();
        const json j = parse_text(buf.str());
        std::map<std::string, ExperimentConfig> out;
        if (j.is_object() && j.contains("runs"))
        {
            only_keys(j, "", {"runs"});
            if (!j["runs"].is_object() || j["runs"].empty())
                fail("runs", "expected a non-empty object");
            for (auto it = j["runs"].begin(); it != j["runs"].end(); ++it)
            {
                try
                {
                    out.emplace(it.key(), parse_object(it.value()));
                }
                catch (const ConfigError &e)
                {
                    throw ConfigError("runs." + it.key() + "." + e.what());
                }
            }
        }
        else
        {
            auto c = parse_object(j);
            out.emplace(c.scenario, c);
        }
        return out;
    }
}
