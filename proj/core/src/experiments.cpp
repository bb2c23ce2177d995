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

#include "ristrain/experiments.hpp"
#include "ristrain/error.hpp"
#include "ristrain/estimators.hpp"
#include "ristrain/training.hpp"
#include "ristrain/units.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

namespace ristrain {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------- scenario builders

LinkParams link(double exponent, double beta) { return {1e-2, exponent, beta}; }

ScenarioConfig siso_scenario(double d, std::size_t n)
{
    ScenarioConfig s;
    s.geometry.bs_antennas = 1;
    s.geometry.set_ris_elements(n);
    s.geometry.user_positions = {{3.0, d, 0.0}};
    s.bs_ris = link(2.0, inf);
    s.ris_user = {link(2.8, 0.0)};
    s.bs_user = {link(3.5, 0.0)};
    s.noise_bs_mw = units::dbm_to_mw(-70.0);
    s.noise_user_mw = units::dbm_to_mw(-70.0);
    s.pilot_power_mw = 1.0;
    s.sinr_targets = {1.0};
    s.transmit_power_mw = 1.0;
    s.coherence_symbols = 1000;
    return s;
}

ScenarioConfig miso_scenario(double d, std::size_t n)
{
    ScenarioConfig s = siso_scenario(d, n);
    s.geometry.bs_antennas = 4;
    s.sinr_targets = {units::db_to_linear(10.0)};
    s.pilot_power_mw = units::dbm_to_mw(15.0);
    return s;
}

ScenarioConfig mimo_scenario(std::size_t n)
{
    ScenarioConfig s;
    s.geometry.bs_antennas = 8;
    s.geometry.set_ris_elements(n);
    s.bs_ris = link(2.0, units::db_to_linear(5.0));
    const double deg = std::numbers::pi / 180.0;
    for (double psi : {-60.0, 0.0, 60.0}) {
        s.geometry.user_positions.push_back({15.0 * std::sin(psi * deg), 15.0 * std::cos(psi * deg), 0.0});
        s.ris_user.push_back(link(3.5, 0.0));
        s.bs_user.push_back(link(2.8, 0.0));
    }
    for (double psi : {-60.0, 0.0, 60.0}) {
        s.geometry.user_positions.push_back(
            {3.0 * std::sin(psi * deg), 50.0 - 3.0 * std::cos(psi * deg), 0.0});
        s.ris_user.push_back(link(2.8, 0.0));
        s.bs_user.push_back(link(3.5, 0.0));
    }
    s.noise_bs_mw = units::dbm_to_mw(-70.0);
    s.noise_user_mw = units::dbm_to_mw(-70.0);
    s.pilot_power_mw = units::dbm_to_mw(15.0);
    s.sinr_targets.assign(6, units::db_to_linear(10.0));
    s.transmit_power_mw = 1.0;
    s.coherence_symbols = 1000;
    return s;
}

std::vector<double> range(double first, double last, double step)
{
    std::vector<double> v;
    for (double x = first; x <= last + 1e-9; x += step)
        v.push_back(x);
    return v;
}

// ---------------------------------------------------------------- trial helpers

struct Design {
    RcVector phi;
    std::optional<PrecoderSet> precoders;
};

std::size_t periods_for(const ExperimentSpec& spec)
{
    return spec.periods.value_or(spec.scenario.ris_elements() + 1);
}

double mean_db(const std::vector<double>& lin)
{
    if (lin.empty())
        return nan;
    double s = 0.0;
    for (double v : lin)
        s += units::linear_to_db(v);
    return s / static_cast<double>(lin.size());
}

Design design_from_estimate(const CascadedEstimate& est, const ExperimentSpec& spec, RngStream& rng)
{
    const ScenarioConfig& sc = spec.scenario;
    Design d;
    if (est.users() == 1 && est.antennas() == 1) {
        d.phi = align_rc_single_user(est);
        if (auto r = try_solve_power_min(est.effective_all(d.phi), sc.sinr_targets, sc.noise_user_mw,
                                         spec.solve))
            d.precoders = std::move(r->precoders);
        return d;
    }
    try {
        AoResult ao = optimize_rc_ao(est, sc.sinr_targets, sc.noise_user_mw, spec.solve, rng);
        d.phi = std::move(ao.phi);
        d.precoders = std::move(ao.precoders);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::infeasible_targets)
            throw;
        d.phi = RcVector::ones(est.elements());
    }
    return d;
}

CascadedEstimate estimate_cascaded(const ChannelRealization& ch, const ExperimentSpec& spec,
                                   RngStream& rng)
{
    const ScenarioConfig& sc = spec.scenario;
    const std::size_t k = ch.users();
    const std::size_t n = ch.elements();
    const double noise = spec.noiseless_estimation ? 0.0 : sc.noise_bs_mw;
    const double sigma2 = noise / sc.pilot_power_mw;

    switch (spec.protocol) {
    case Protocol::optimal:
        return inject_errors(ch, ErrorStats{}, rng, EstimatorKind::perfect);
    case Protocol::onoff:
        if (k == 1)
            return onoff_estimate_single_user(ch, noise, sc.pilot_power_mw, rng);
        return inject_errors(ch, mse_stats(EstimatorKind::onoff, n, k, sigma2), rng, EstimatorKind::onoff);
    case Protocol::three_phase:
        return inject_errors(ch, mse_stats(EstimatorKind::three_phase, n, k, sigma2), rng,
                             EstimatorKind::three_phase);
    case Protocol::dft: {
        const PilotConfig pilots = orthogonal_pilots(k, sc.pilot_power_mw);
        const ComplexMatrix g = dft_training_matrix(n, pilots);
        return ls_cascaded(simulate_uplink_cascaded(ch, g, noise, rng), g, k);
    }
    default:
        break;
    }
    throw Error(ErrorCode::unknown_method, "protocol does not estimate cascaded channels");
}

} // namespace

// ---------------------------------------------------------------- names

std::string_view to_string(Protocol p) noexcept
{
    switch (p) {
    case Protocol::onoff: return "onoff";
    case Protocol::three_phase: return "three-phase";
    case Protocol::dft: return "dft";
    case Protocol::training_random: return "training-random";
    case Protocol::training_equipartition: return "training-equipartition";
    case Protocol::optimal: return "optimal";
    case Protocol::single_random: return "single-random";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name)
{
    for (Protocol p : {Protocol::onoff, Protocol::three_phase, Protocol::dft, Protocol::training_random,
                       Protocol::training_equipartition, Protocol::optimal, Protocol::single_random})
        if (name == to_string(p))
            return p;
    if (name == "training")
        return Protocol::training_random;
    throw Error(ErrorCode::unknown_method, "unknown protocol '" + std::string(name) + "'");
}

std::string_view to_string(SweepVariable v) noexcept
{
    switch (v) {
    case SweepVariable::elements: return "N";
    case SweepVariable::periods: return "Q";
    case SweepVariable::distance: return "d";
    case SweepVariable::transmit_power: return "P";
    case SweepVariable::pilot_power: return "alpha";
    case SweepVariable::sinr_target: return "gamma";
    }
    return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view name)
{
    for (SweepVariable v : {SweepVariable::elements, SweepVariable::periods, SweepVariable::distance,
                            SweepVariable::transmit_power, SweepVariable::pilot_power,
                            SweepVariable::sinr_target})
        if (name == to_string(v))
            return v;
    throw Error(ErrorCode::invalid_argument, "unknown sweep variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- experiment definitions

void ExperimentSpec::validate() const
{
    scenario.validate();
    solve.validate();
    if (trials == 0)
        throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
    if (sweep_values.empty())
        throw Error(ErrorCode::invalid_argument, "sweep needs at least one value");
    if (periods && *periods == 0)
        throw Error(ErrorCode::invalid_argument, "Q must be at least 1");
    if (metric == Metric::received_power && scenario.users() != 1)
        throw Error(ErrorCode::invalid_argument, "received-power experiments are single-user");
    for (double v : sweep_values)
        at_sweep_value(*this, v).scenario.validate();
}

ExperimentSpec at_sweep_value(const ExperimentSpec& spec, double value)
{
    ExperimentSpec s = spec;
    auto count = [&](double v, std::size_t min) {
        if (!(v >= static_cast<double>(min)) || v != std::floor(v) || v > 1e6)
            throw Error(ErrorCode::invalid_argument,
                        "sweep value " + std::to_string(v) + " is not a valid count");
        return static_cast<std::size_t>(v);
    };
    switch (spec.sweep) {
    case SweepVariable::elements:
        s.scenario.geometry.set_ris_elements(count(value, 1));
        break;
    case SweepVariable::periods:
        s.periods = count(value, 1);
        break;
    case SweepVariable::distance:
        if (s.scenario.users() != 1)
            throw Error(ErrorCode::invalid_argument, "distance sweeps are single-user");
        s.scenario.geometry.user_positions[0].y = value;
        break;
    case SweepVariable::transmit_power:
        s.scenario.transmit_power_mw = units::dbm_to_mw(value);
        break;
    case SweepVariable::pilot_power:
        s.scenario.pilot_power_mw = units::dbm_to_mw(value);
        break;
    case SweepVariable::sinr_target:
        for (double& g : s.scenario.sinr_targets)
            g = units::db_to_linear(value);
        break;
    }
    return s;
}

// ---------------------------------------------------------------- presets

std::vector<std::string> preset_ids()
{
    std::vector<std::string> ids;
    for (int f = 5; f <= 17; ++f)
        ids.push_back("fig" + std::to_string(f));
    return ids;
}

ExperimentSpec preset(std::string_view id)
{
    ExperimentSpec s;
    s.name = std::string(id);
    s.master_seed = 42;

    if (id == "fig5") {
        s.scenario = siso_scenario(50.0, 10);
        s.protocol = Protocol::optimal;
        s.sweep = SweepVariable::distance;
        s.sweep_values = range(10.0, 70.0, 5.0);
        s.trials = 2000;
        s.description = "SISO geometry, received power vs BS-user horizontal distance";
    } else if (id == "fig6" || id == "fig7") {
        s.scenario = siso_scenario(50.0, 500);
        s.scenario.pilot_power_mw = units::dbm_to_mw(id == "fig6" ? -30.0 : 10.0);
        s.protocol = Protocol::dft;
        s.sweep = SweepVariable::transmit_power;
        s.sweep_values = range(0.0, 40.0, 5.0);
        s.trials = 200;
        s.description = id == "fig6" ? "SISO N=500, estimation protocols vs P, alpha=-30 dBm"
                                     : "SISO N=500, estimation protocols vs P, alpha=10 dBm";
    } else if (id == "fig8" || id == "fig9") {
        s.scenario = siso_scenario(50.0, id == "fig8" ? 1 : 5);
        s.protocol = Protocol::training_random;
        s.sweep = SweepVariable::periods;
        s.sweep_values = range(1.0, 10.0, 1.0);
        s.noiseless_estimation = true;
        s.trials = 5000;
        s.description = id == "fig8" ? "noiseless training, N=1, received power vs Q"
                                     : "noiseless training, N=5, received power vs Q";
    } else if (id == "fig10" || id == "fig11") {
        s.scenario = siso_scenario(50.0, id == "fig10" ? 1 : 5);
        s.scenario.pilot_power_mw = units::dbm_to_mw(15.0);
        s.protocol = Protocol::training_random;
        s.sweep = SweepVariable::periods;
        s.sweep_values = range(1.0, 10.0, 1.0);
        s.trials = 5000;
        s.description = id == "fig10" ? "noisy training, N=1, alpha=15 dBm, received power vs Q"
                                      : "noisy training, N=5, alpha=15 dBm, received power vs Q";
    } else if (id == "fig12" || id == "fig13") {
        s.scenario = miso_scenario(id == "fig12" ? 50.0 : 40.0, 10);
        s.protocol = Protocol::training_random;
        s.metric = Metric::transmit_power;
        s.sweep = SweepVariable::elements;
        s.sweep_values = range(10.0, 60.0, 10.0);
        s.trials = 200;
        s.description = id == "fig12" ? "MISO M=4, gamma=10 dB, d=50 m, transmit power vs N"
                                      : "MISO M=4, gamma=10 dB, d=40 m, transmit power vs N";
    } else if (id == "fig14") {
        s.scenario = miso_scenario(50.0, 30);
        s.protocol = Protocol::onoff;
        s.metric = Metric::transmit_power;
        s.sweep = SweepVariable::distance;
        s.sweep_values = range(30.0, 70.0, 5.0);
        s.trials = 200;
        s.description = "MISO M=4, N=30, transmit power vs BS-user horizontal distance";
    } else if (id == "fig15" || id == "fig16" || id == "fig17") {
        s.scenario = mimo_scenario(20);
        s.protocol = Protocol::training_random;
        s.metric = Metric::transmit_power;
        s.trials = 20;
        if (id == "fig15") {
            s.sweep = SweepVariable::sinr_target;
            s.sweep_values = {10.0};
            s.description = "multiuser geometry K=6, N=20, gamma=10 dB";
        } else if (id == "fig16") {
            s.sweep = SweepVariable::elements;
            s.sweep_values = {20.0, 40.0, 60.0, 80.0};
            s.description = "multiuser K=6, transmit power vs N";
        } else {
            s.sweep = SweepVariable::sinr_target;
            s.sweep_values = range(0.0, 15.0, 5.0);
            s.description = "multiuser K=6, N=20, transmit power vs gamma";
        }
    } else {
        throw Error(ErrorCode::unknown_preset, "unknown preset '" + std::string(id) + "'");
    }
    return s;
}

// ---------------------------------------------------------------- trials

TrialRecord run_trial(const ExperimentSpec& base, std::size_t sweep_index, std::size_t trial)
{
    if (sweep_index >= base.sweep_values.size())
        throw Error(ErrorCode::invalid_dimension, "sweep index out of range");
    const ExperimentSpec spec = at_sweep_value(base, base.sweep_values[sweep_index]);
    const ScenarioConfig& sc = spec.scenario;

    auto stream = [&](StreamPurpose p) { return RngStream(spec.master_seed, derive_stream_id(trial, p)); };
    RngStream ch_rng = stream(StreamPurpose::channel);
    RngStream est_rng = stream(StreamPurpose::estimation);
    RngStream sched_rng = stream(StreamPurpose::schedule);
    RngStream restart_rng = stream(StreamPurpose::restarts);

    const ChannelRealization ch = sample_channels(sc, ch_rng);
    const std::size_t k = ch.users();
    const std::size_t n = ch.elements();

    TrialRecord rec;
    rec.sweep_name = std::string(to_string(spec.sweep));
    rec.sweep_value = base.sweep_values[sweep_index];
    rec.trial = trial;

    Design design;
    switch (spec.protocol) {
    case Protocol::training_random:
    case Protocol::training_equipartition:
    case Protocol::single_random: {
        const bool single = spec.protocol == Protocol::single_random;
        const std::size_t q = single ? 1 : periods_for(spec);
        const ScheduleKind kind = spec.protocol == Protocol::training_equipartition
                                      ? ScheduleKind::equipartition
                                      : ScheduleKind::random;
        const TrainingSchedule schedule = make_schedule(kind, n, q, sched_rng);
        const PilotConfig pilots = orthogonal_pilots(k, sc.pilot_power_mw);
        const double noise = spec.noiseless_estimation ? 0.0 : sc.noise_bs_mw;
        rec.pilot_slots = q * k;
        try {
            SelectionResult sel = run_training(ch, schedule, pilots, noise, sc.sinr_targets,
                                               sc.noise_user_mw, spec.solve, est_rng);
            design.phi = std::move(sel.phi);
            design.precoders = std::move(sel.precoders);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::infeasible_trial)
                throw;
            design.phi = schedule.rc_per_period.front();
        }
        break;
    }
    case Protocol::onoff:
    case Protocol::three_phase:
    case Protocol::dft:
    case Protocol::optimal: {
        const CascadedEstimate est = estimate_cascaded(ch, spec, est_rng);
        design = design_from_estimate(est, spec, restart_rng);
        rec.pilot_slots = (n + 1) * k;
        break;
    }
    }

    const ComplexMatrix h = superimpose_all(ch, design.phi);
    if (spec.metric == Metric::received_power) {
        const double gain = h.col(0).squaredNorm();
        rec.power_mw = sc.transmit_power_mw * gain;
        rec.sinrs = {rec.power_mw / sc.noise_user_mw};
        rec.mean_sinr_db = mean_db(rec.sinrs);
        rec.feasible = true;
        return rec;
    }

    if (!design.precoders) {
        rec.power_mw = inf;
        rec.mean_sinr_db = nan;
        rec.feasible = false;
        return rec;
    }
    rec.sinrs = sinr(h, *design.precoders, sc.noise_user_mw);
    rec.mean_sinr_db = mean_db(rec.sinrs);
    const auto p = powers_for_directions(h, design.precoders->directions(), sc.sinr_targets,
                                         sc.noise_user_mw);
    rec.feasible = p.has_value();
    rec.power_mw = p ? p->sum() : inf;
    return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, std::size_t threads)
{
    spec.validate();
    const std::size_t total = spec.sweep_values.size() * spec.trials;
    std::vector<TrialRecord> out(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total)
                return;
            try {
                out[i] = run_trial(spec, i / spec.trials, i % spec.trials);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, total));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

// ---------------------------------------------------------------- CSV

namespace {

std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out)
{
    out << csv_header << '\n';
    for (const TrialRecord& r : records) {
        const double dbm = r.power_mw > 0.0 ? units::mw_to_dbm(r.power_mw) : -inf;
        out << r.sweep_name << ',' << fmt(r.sweep_value) << ',' << r.trial << ',' << fmt(r.power_mw)
            << ',' << fmt(std::isinf(r.power_mw) ? inf : dbm) << ',' << fmt(r.mean_sinr_db) << ','
            << (r.feasible ? 1 : 0) << ',' << r.pilot_slots << '\n';
    }
}

void emit_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path)
{
    if (records.empty())
        throw Error(ErrorCode::invalid_argument, "no records to write");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error(ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
    write_csv(records, f);
    f.flush();
    if (!f)
        throw Error(ErrorCode::io_error, "failed writing '" + path.string() + "'");
}

} // namespace ristrain
