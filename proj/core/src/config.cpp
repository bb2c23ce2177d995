// SPDX-License-Identifier: Apache-2.0
//
// ristrainlab: simulation library for RIS-assisted multiuser downlink training
// Copyright (C) 2026 The ristrainlab authors
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

#include "ristrain/error.hpp"
#include "ristrain/experiments.hpp"
#include "ristrain/units.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ristrain {

namespace {

using json = nlohmann::json;
using units::Quantity;

double quantity(const json& v, Quantity kind, const char* key)
{
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
        return units::parse_quantity(v.get<std::string>(), kind);
    throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be a number or a string");
}

Vec3 vec3(const json& v, const char* key)
{
    if (!v.is_array() || v.size() != 3)
        throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be [x, y, z]");
    return {quantity(v[0], Quantity::length, key), quantity(v[1], Quantity::length, key),
            quantity(v[2], Quantity::length, key)};
}

void read_link(const json& j, LinkParams& p)
{
    if (j.contains("c0"))
        p.c0 = quantity(j["c0"], Quantity::ratio, "c0");
    if (j.contains("exponent"))
        p.exponent = quantity(j["exponent"], Quantity::ratio, "exponent");
    if (j.contains("rician"))
        p.rician_beta = quantity(j["rician"], Quantity::ratio, "rician");
}

void read_scenario(const json& j, ScenarioConfig& s)
{
    ArrayGeometry& g = s.geometry;
    if (j.contains("bs_antennas"))
        g.bs_antennas = j["bs_antennas"].get<std::size_t>();
    if (j.contains("ris_elements"))
        g.set_ris_elements(j["ris_elements"].get<std::size_t>());
    if (j.contains("ris_nx"))
        g.ris_nx = j["ris_nx"].get<std::size_t>();
    if (j.contains("ris_nz"))
        g.ris_nz = j["ris_nz"].get<std::size_t>();
    if (j.contains("element_spacing"))
        g.element_spacing = j["element_spacing"].get<double>();
    if (j.contains("bs_center"))
        g.bs_center = vec3(j["bs_center"], "bs_center");
    if (j.contains("ris_center"))
        g.ris_center = vec3(j["ris_center"], "ris_center");
    if (j.contains("bs_ris"))
        read_link(j["bs_ris"], s.bs_ris);

    if (j.contains("users")) {
        const json& users = j["users"];
        if (!users.is_array() || users.empty())
            throw Error(ErrorCode::invalid_argument, "'users' must be a non-empty array");
        const LinkParams iu0 = s.ris_user.empty() ? LinkParams{} : s.ris_user.front();
        const LinkParams bu0 = s.bs_user.empty() ? LinkParams{} : s.bs_user.front();
        const double gamma0 = s.sinr_targets.empty() ? 1.0 : s.sinr_targets.front();
        g.user_positions.clear();
        s.ris_user.clear();
        s.bs_user.clear();
        s.sinr_targets.clear();
        for (const json& u : users) {
            if (!u.contains("position"))
                throw Error(ErrorCode::invalid_argument, "every user needs a 'position'");
            g.user_positions.push_back(vec3(u["position"], "position"));
            LinkParams iu = iu0;
            LinkParams bu = bu0;
            if (u.contains("ris_user"))
                read_link(u["ris_user"], iu);
            if (u.contains("bs_user"))
                read_link(u["bs_user"], bu);
            s.ris_user.push_back(iu);
            s.bs_user.push_back(bu);
            s.sinr_targets.push_back(u.contains("sinr_target")
                                         ? quantity(u["sinr_target"], Quantity::ratio, "sinr_target")
                                         : gamma0);
        }
    }
    if (j.contains("sinr_target"))
        s.sinr_targets.assign(s.users(), quantity(j["sinr_target"], Quantity::ratio, "sinr_target"));
    if (j.contains("noise_bs"))
        s.noise_bs_mw = quantity(j["noise_bs"], Quantity::power, "noise_bs");
    if (j.contains("noise_user"))
        s.noise_user_mw = quantity(j["noise_user"], Quantity::power, "noise_user");
    if (j.contains("pilot_power"))
        s.pilot_power_mw = quantity(j["pilot_power"], Quantity::power, "pilot_power");
    if (j.contains("transmit_power"))
        s.transmit_power_mw = quantity(j["transmit_power"], Quantity::power, "transmit_power");
    if (j.contains("coherence_symbols"))
        s.coherence_symbols = j["coherence_symbols"].get<std::size_t>();
}

void read_solver(const json& j, SolveOptions& o)
{
    if (j.contains("tol"))
        o.tol = j["tol"].get<double>();
    if (j.contains("max_iterations"))
        o.max_iterations = j["max_iterations"].get<std::size_t>();
    if (j.contains("phase_grid_size"))
        o.phase_grid_size = j["phase_grid_size"].get<std::size_t>();
    if (j.contains("ao_max_rounds"))
        o.ao_max_rounds = j["ao_max_rounds"].get<std::size_t>();
    if (j.contains("restarts"))
        o.restarts = j["restarts"].get<std::size_t>();
}

ExperimentSpec overlay(ExperimentSpec s, const json& j)
{
    if (!j.is_object())
        throw Error(ErrorCode::invalid_argument, "experiment config must be a JSON object");
    if (j.contains("name"))
        s.name = j["name"].get<std::string>();
    if (j.contains("protocol"))
        s.protocol = parse_protocol(j["protocol"].get<std::string>());
    if (j.contains("metric")) {
        const auto m = j["metric"].get<std::string>();
        if (m == "received-power")
            s.metric = Metric::received_power;
        else if (m == "transmit-power")
            s.metric = Metric::transmit_power;
        else
            throw Error(ErrorCode::invalid_argument, "unknown metric '" + m + "'");
    }
    if (j.contains("trials"))
        s.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed"))
        s.master_seed = j["seed"].get<std::uint64_t>();
    if (j.contains("periods")) {
        if (j["periods"].is_null())
            s.periods.reset();
        else
            s.periods = j["periods"].get<std::size_t>();
    }
    if (j.contains("noiseless_estimation"))
        s.noiseless_estimation = j["noiseless_estimation"].get<bool>();
    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        if (sw.contains("variable"))
            s.sweep = parse_sweep_variable(sw["variable"].get<std::string>());
        if (sw.contains("values"))
            s.sweep_values = sw["values"].get<std::vector<double>>();
    }
    if (j.contains("scenario"))
        read_scenario(j["scenario"], s.scenario);
    if (j.contains("solver"))
        read_solver(j["solver"], s.solve);
    return s;
}

} // namespace

ExperimentSpec apply_config_json(const ExperimentSpec& base, std::string_view json_text)
{
    try {
        ExperimentSpec s = overlay(base, json::parse(json_text));
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("bad experiment config: ") + e.what());
    }
}

ExperimentSpec load_experiment_config(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorCode::io_error, "cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();

    ExperimentSpec base;
    try {
        const json j = json::parse(text);
        if (j.contains("preset"))
            base = preset(j["preset"].get<std::string>());
        else
            base = preset("fig8");
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("bad experiment config: ") + e.what());
    }
    return apply_config_json(base, text);
}

} // namespace ristrain
