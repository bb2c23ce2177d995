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

#include "ristrain/numerics.hpp"

#include <cstddef>

namespace ristrain::theory {

/// Inputs of the closed-form received-power laws for a single-antenna link
/// with N i.i.d. CN(0, rho_r2) reflected paths and a CN(0, rho_d2) direct path.
struct ClosedFormInputs {
    double power_mw = 1.0;    // P
    std::size_t elements = 1; // N
    double rho_r2 = 1.0;
    double rho_d2 = 1.0;
    double sigma_r2 = 0.0;
    double sigma_d2 = 0.0;
    double sigma_q2 = 0.0;
    std::size_t periods = 1;  // Q

    void validate() const;
};

enum class LawKind { exact, upper };

struct PowerLaw {
    double value_mw = 0.0;
    LawKind kind = LawKind::exact;
};

/// Expected maximum of Q i.i.d. uniform-phase cosines. Alternating sum for
/// Q <= 15, adaptive Gauss-Kronrod quadrature above.
double g_of_Q(std::size_t q);

/// The alternating-sum branch alone, exposed for cross-checking the quadrature.
double g_of_Q_series(std::size_t q);
/// The quadrature branch alone.
double g_of_Q_integral(std::size_t q);

struct MonteCarloEstimate {
    double mean = 0.0;
    double half_width = 0.0;   // 3 sigma
};

/// Direct Monte Carlo estimate of E[max_q cos theta_q]; needs >= 1e4 samples.
MonteCarloEstimate mean_max_cos_oracle(std::size_t q, std::size_t samples, RngStream& rng);

/// sin(pi/Q) / (pi/Q), the alignment factor of the equi-partition schedule.
double equipartition_mean_cos(std::size_t q);

/// Random-schedule training power: exact for N = 1, an upper bound for N >= 2.
PowerLaw power_random_training(const ClosedFormInputs& in);
/// Equi-partition training power: exact for N = 1, an upper bound for N >= 2.
PowerLaw power_equipartition_upper(const ClosedFormInputs& in);
/// Received power under perfectly aligned RCs.
double power_optimal(const ClosedFormInputs& in);
/// Received power when RCs are aligned on estimates with error powers sigma_r2 and sigma_d2.
double power_noisy_alignment(const ClosedFormInputs& in);
/// Upper bound for random-schedule training with superimposed estimation error sigma_q2.
double power_noisy_training_upper(const ClosedFormInputs& in);

enum class AsymptoticKind { training, alignment };

/// Large-N ratio to the optimal power: g(Q)^2 for training, rho_r2/(rho_r2+sigma_r2) for alignment.
double asymptotic_ratio(AsymptoticKind kind, const ClosedFormInputs& in);

struct RateInputs {
    std::size_t tau = 0;          // training symbols
    std::size_t tau_co = 1000;    // symbols per coherence interval
    double received_power_mw = 0; // P E{gain}
    double noise_mw = 1.0;        // sigma^2
};

/// ((tau_co - tau) / tau_co) log2(1 + P E{gain} / sigma^2) in b/s/Hz.
double achievable_rate(const RateInputs& in);

} // namespace ristrain::theory
