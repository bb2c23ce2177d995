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

#include "ristrain/training.hpp"
#include "ristrain/error.hpp"

#include <bit>
#include <numbers>
#include <string>

namespace ristrain {

namespace {

void check_schedule_args(std::size_t elements, std::size_t periods)
{
    if (elements == 0)
        throw Error(ErrorCode::invalid_dimension, "schedule needs at least one RIS element");
    if (periods == 0)
        throw Error(ErrorCode::invalid_dimension, "schedule needs at least one training period");
}

} // namespace

std::string_view to_string(ScheduleKind kind) noexcept
{
    switch (kind) {
    case ScheduleKind::random: return "random";
    case ScheduleKind::equipartition: return "equipartition";
    }
    return "unknown";
}

ScheduleKind parse_schedule(std::string_view name)
{
    if (name == "random")
        return ScheduleKind::random;
    if (name == "equipartition" || name == "equi-partition")
        return ScheduleKind::equipartition;
    throw Error(ErrorCode::unknown_method, "unknown schedule '" + std::string(name) + "'");
}

TrainingSchedule schedule_random(std::size_t elements, std::size_t periods, RngStream& rng)
{
    check_schedule_args(elements, periods);
    TrainingSchedule s;
    s.method = ScheduleKind::random;
    s.rc_per_period.reserve(periods);
    for (std::size_t q = 0; q < periods; ++q) {
        ComplexVector c(static_cast<Eigen::Index>(elements));
        for (Eigen::Index n = 0; n < c.size(); ++n)
            c(n) = rng.unit_phasor();
        s.rc_per_period.emplace_back(std::move(c));
    }
    return s;
}

TrainingSchedule schedule_equipartition(std::size_t elements, std::size_t periods, RngStream& rng)
{
    check_schedule_args(elements, periods);
    std::vector<double> initial(elements);
    for (double& t : initial)
        t = rng.uniform_phase();

    TrainingSchedule s;
    s.method = ScheduleKind::equipartition;
    s.rc_per_period.reserve(periods);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(periods);
    for (std::size_t q = 0; q < periods; ++q) {
        ComplexVector c(static_cast<Eigen::Index>(elements));
        for (std::size_t n = 0; n < elements; ++n)
            c(static_cast<Eigen::Index>(n)) = std::polar(1.0, initial[n] + step * static_cast<double>(q));
        s.rc_per_period.emplace_back(std::move(c));
    }
    return s;
}

TrainingSchedule make_schedule(ScheduleKind kind, std::size_t elements, std::size_t periods,
                               RngStream& rng)
{
    return kind == ScheduleKind::random ? schedule_random(elements, periods, rng)
                                        : schedule_equipartition(elements, periods, rng);
}

std::size_t signalling_bits(std::size_t periods)
{
    if (periods == 0)
        throw Error(ErrorCode::invalid_dimension, "at least one training period is required");
    return static_cast<std::size_t>(std::bit_width(periods - 1));
}

SelectionResult run_training(const ChannelRealization& ch, const TrainingSchedule& schedule,
                             const PilotConfig& pilots, double noise_bs_mw,
                             std::span<const double> gamma, double noise_user_mw,
                             const SolveOptions& opts, RngStream& rng)
{
    if (schedule.periods() == 0)
        throw Error(ErrorCode::invalid_dimension, "schedule has no training periods");

    SelectionResult out;
    out.outcomes.reserve(schedule.periods());
    std::optional<std::size_t> best;
    for (std::size_t q = 0; q < schedule.periods(); ++q) {
        PeriodOutcome o;
        o.q = q;
        o.estimate = estimate_superimposed(ch, schedule.rc_per_period[q], pilots, noise_bs_mw, rng);
        if (auto res = try_solve_power_min(o.estimate.h, gamma, noise_user_mw, opts)) {
            o.total_mw = res->precoders.total_mw;
            o.precoders = std::move(res->precoders);
            if (!best || o.total_mw < out.outcomes[*best].total_mw)
                best = q;
        }
        out.outcomes.push_back(std::move(o));
    }
    if (!best)
        throw Error(ErrorCode::infeasible_trial, "SINR targets are infeasible in every training period");

    const PeriodOutcome& sel = out.outcomes[*best];
    out.q_hat = *best;
    out.phi = schedule.rc_per_period[*best];
    out.estimate = sel.estimate;
    out.precoders = *sel.precoders;
    out.pilot_slots = schedule.periods() * pilots.period_length();
    out.signalling_bits = signalling_bits(schedule.periods());
    return out;
}

} // namespace ristrain
