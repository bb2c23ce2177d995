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

#pragma once

#include "ristrain/beamforming.hpp"
#include "ristrain/channel.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ristrain {

enum class Protocol {
    onoff,
    three_phase,
    dft,
    training_random,
    training_equipartition,
    optimal,
    single_random,
};

std::string_view to_string(Protocol p) noexcept;
Protocol parse_protocol(std::string_view name);

/// Swept quantity. Values are given in display units: counts for N and Q,
/// meters for d, dBm for P and alpha, dB for gamma.
enum class SweepVariable { elements, periods, distance, transmit_power, pilot_power, sinr_target };

std::string_view to_string(SweepVariable v) noexcept;
SweepVariable parse_sweep_variable(std::string_view name);

/// What a trial reports in power_mw.
enum class Metric {
    received_power,   // P * ||h(phi)||^2 with matched filtering, fixed transmit power
    transmit_power,   // BS power needed to meet the SINR targets on the true channels
};

struct ExperimentSpec {
    std::string name;
    ScenarioConfig scenario;
    Protocol protocol = Protocol::training_random;
    Metric metric = Metric::received_power;
    SweepVariable sweep = SweepVariable::periods;
    std::vector<double> sweep_values;
    std::optional<std::size_t> periods;   // unset: Q = N + 1
    bool noiseless_estimation = false;
    std::size_t trials = 100;
    std::uint64_t master_seed = 1;
    SolveOptions solve;
    std::string description;

    void validate() const;
};

struct TrialRecord {
    std::string sweep_name;
    double sweep_value = 0.0;
    std::size_t trial = 0;
    double power_mw = 0.0;
    double mean_sinr_db = 0.0;
    bool feasible = true;
    std::size_t pilot_slots = 0;
    std::vector<double> sinrs;   // achieved linear SINRs on the true channels
};

/// Identifiers of the built-in presets, in numeric order.
std::vector<std::string> preset_ids();

/// Built-in scenario and sweep of one preset. Throws Error(unknown_preset).
ExperimentSpec preset(std::string_view id);

/// Applies one sweep value to a copy of the experiment (scenario and Q).
ExperimentSpec at_sweep_value(const ExperimentSpec& spec, double value);

/// Runs a single trial. Pure function of (spec, sweep index, trial index).
TrialRecord run_trial(const ExperimentSpec& spec, std::size_t sweep_index, std::size_t trial);

/// Runs every (sweep value, trial) pair on `threads` workers. The result is
/// ordered by sweep index then trial and does not depend on `threads`.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, std::size_t threads = 1);

/// Header plus one line per record, 9 significant digits.
void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);
/// Throws Error(io_error) if the file cannot be written, Error(invalid_argument) on no records.
void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);

inline constexpr std::string_view csv_header =
    "sweep_name,sweep_value,trial,power_mw,power_dbm,mean_sinr_db,feasible,pilot_slots";

/// Overlays a JSON experiment description onto `base` (usually a preset).
/// Quantities accept unit suffixes such as "-70dBm" or "5dB".
ExperimentSpec apply_config_json(const ExperimentSpec& base, std::string_view json_text);
/// Reads a JSON config file; a top-level "preset" key selects the base spec.
ExperimentSpec load_experiment_config(const std::filesystem::path& path);

} // namespace ristrain
