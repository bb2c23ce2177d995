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
#include "ristrain/estimators.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ristrain {

enum class ScheduleKind { random, equipartition };

std::string_view to_string(ScheduleKind kind) noexcept;
/// Accepts "random" and "equipartition" (or "equi-partition").
ScheduleKind parse_schedule(std::string_view name);

/// RC vectors applied in the Q training periods, one period of K pilot slots each.
struct TrainingSchedule {
    ScheduleKind method = ScheduleKind::random;
    std::vector<RcVector> rc_per_period;

    std::size_t periods() const noexcept { return rc_per_period.size(); }
};

/// i.i.d. uniform phases for every element in every period.
TrainingSchedule schedule_random(std::size_t elements, std::size_t periods, RngStream& rng);

/// Regular Q-polygon per element: phi_{q,n} = phi_n exp(i 2 pi q / Q), q = 0..Q-1,
/// with a uniform random initial phase per element.
TrainingSchedule schedule_equipartition(std::size_t elements, std::size_t periods, RngStream& rng);

TrainingSchedule make_schedule(ScheduleKind kind, std::size_t elements, std::size_t periods,
                               RngStream& rng);

struct PeriodOutcome {
    std::size_t q = 0;   // 0-based period index
    SuperimposedEstimate estimate;
    std::optional<PrecoderSet> precoders;   // empty when the targets were infeasible
    double total_mw = std::numeric_limits<double>::infinity();

    bool feasible() const noexcept { return precoders.has_value(); }
};

struct SelectionResult {
    std::size_t q_hat = 0;   // 0-based index of the selected period
    RcVector phi;
    SuperimposedEstimate estimate;
    PrecoderSet precoders;   // designed from the selected period's estimate only
    std::vector<PeriodOutcome> outcomes;
    std::size_t pilot_slots = 0;       // Q K
    std::size_t signalling_bits = 0;   // ceil(log2 Q)
};

/// Bits needed to feed the selected period index back to the RIS, ceil(log2 Q).
std::size_t signalling_bits(std::size_t periods);

/// Runs the training protocol: per period, estimate the superimposed channels
/// under that period's RC vector and solve the power minimisation on the
/// estimates; then select the feasible period of least total power (ties go to
/// the smaller index). Throws Error(infeasible_trial) when no period is feasible.
SelectionResult run_training(const ChannelRealization& ch, const TrainingSchedule& schedule,
                             const PilotConfig& pilots, double noise_bs_mw,
                             std::span<const double> gamma, double noise_user_mw,
                             const SolveOptions& opts, RngStream& rng);

} // namespace ristrain
