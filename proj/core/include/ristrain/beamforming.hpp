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

#include "ristrain/channel.hpp"
#include "ristrain/estimators.hpp"
#include "ristrain/numerics.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ristrain {

struct SolveOptions {
    double tol = 1e-4;                  // fixed-point and AO stopping threshold
    std::size_t max_iterations = 10000;
    std::size_t phase_grid_size = 64;
    std::size_t ao_max_rounds = 50;
    std::size_t restarts = 4;
    double lambda_cap = 1e12;           // divergence cap, relative to the initial multiplier

    void validate() const;
};

/// Downlink precoders: column k of `w` is w_k with ||w_k||^2 = powers(k).
struct PrecoderSet {
    ComplexMatrix w;          // M x K
    RealVector powers;        // mW
    double total_mw = 0.0;

    std::size_t users() const noexcept { return static_cast<std::size_t>(w.cols()); }
    /// Unit-norm beam directions (columns of w divided by their norms).
    ComplexMatrix directions() const;
};

struct DualState {
    RealVector lambda;        // uplink multipliers, >= 0
    RealMatrix coupling;      // K x K, diag |h_i^H w_i|^2 / gamma_i, off-diag -|h_j^H w_i|^2
    std::size_t iterations = 0;
    bool converged = false;
};

struct PowerMinResult {
    PrecoderSet precoders;
    DualState dual;
};

/// SINR of every user; `h` holds the uplink-convention channels as M x K
/// columns, so user k receives h_k^H w_j from beam j.
std::vector<double> sinr(const ComplexMatrix& h, const ComplexMatrix& w, double noise_user_mw);
std::vector<double> sinr(const ComplexMatrix& h, const PrecoderSet& precoders, double noise_user_mw);

/// Minimum-power precoders meeting SINR_k >= gamma_k, via the uplink-duality
/// fixed point. Throws Error(infeasible_targets) when the targets cannot be met.
PowerMinResult solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                               double noise_user_mw, const SolveOptions& opts = {});

/// Non-throwing variant for inner loops; returns nullopt when infeasible.
std::optional<PowerMinResult> try_solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                                                  double noise_user_mw, const SolveOptions& opts = {});

/// Same, with the fixed point started from `lambda_start` instead of
/// gamma_k sigma^2 / ||h_k||^2. Useful when re-solving after a small change of h.
std::optional<PowerMinResult> try_solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                                                  double noise_user_mw, const SolveOptions& opts,
                                                  const RealVector& lambda_start);

/// Powers that make fixed unit-norm `directions` meet the targets exactly on
/// channels `h`, from the linear system M^T p = sigma^2 1. nullopt when the
/// system is singular or needs a negative power.
std::optional<RealVector> powers_for_directions(const ComplexMatrix& h, const ComplexMatrix& directions,
                                                std::span<const double> gamma, double noise_user_mw);

/// Single-user, single-antenna RC alignment from cascaded estimates: every
/// reflected term conj(phi_n) h_rn is rotated onto the direct channel, i.e.
/// phi_n = h_rn conj(h_d) / |h_rn conj(h_d)|, with phi_n = 1 for a zero product.
RcVector align_rc_single_user(const CascadedEstimate& est);

struct AoResult {
    RcVector phi;
    PrecoderSet precoders;
    DualState dual;
    std::vector<double> objective_trace;   // accepted total powers of the winning restart
};

/// Alternating optimisation of RC and precoders on estimated channels:
/// per-element phase grid search (plus a finer pass around the winner) with
/// the precoders re-solved for every candidate, repeated until the relative
/// round improvement drops below opts.tol. Best of opts.restarts random starts.
/// Throws Error(infeasible_targets) if no candidate is ever feasible.
AoResult optimize_rc_ao(const CascadedEstimate& est, std::span<const double> gamma,
                        double noise_user_mw, const SolveOptions& opts, RngStream& rng);

} // namespace ristrain
