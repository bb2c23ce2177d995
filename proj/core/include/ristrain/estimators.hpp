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
#include "ristrain/numerics.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace ristrain {

enum class EstimatorKind {
    onoff,
    three_phase,
    dft,
    superimposed,
    perfect,   // ground truth copied through, used by oracles
};

std::string_view to_string(EstimatorKind kind) noexcept;
/// Accepts "onoff", "three-phase" (or "three_phase"), "dft", "superimposed" and
/// "training". Throws Error(unknown_method) otherwise.
EstimatorKind parse_estimator(std::string_view name);

/// Orthogonal pilot sequences: row k of `x` is user k's pilot over the P slots
/// of a group (or the L slots of a training period).
struct PilotConfig {
    std::size_t users = 1;
    double power_mw = 1.0;   // alpha
    ComplexMatrix x;         // K x P, unit-modulus entries
    std::size_t groups = 1;  // P

    /// Slots of one superimposed-training period, L = K.
    std::size_t period_length() const noexcept { return users; }
};

/// K-point DFT pilots: unit modulus, X X^H = K I, P = L = K.
PilotConfig orthogonal_pilots(std::size_t users, double power_mw);

/// Per-user estimates of the direct and reflected channels, stored like
/// ChannelRealization::cascaded as M x (N+1) stacks [h_d, h_r1, ..., h_rN].
struct CascadedEstimate {
    EstimatorKind method = EstimatorKind::perfect;
    std::vector<ComplexMatrix> stacks;
    std::size_t pilot_slots = 0;

    std::size_t users() const noexcept { return stacks.size(); }
    std::size_t antennas() const noexcept;
    std::size_t elements() const noexcept;

    ComplexVector direct(std::size_t user) const;
    ComplexVector reflected(std::size_t user, std::size_t element) const;
    /// Estimated superimposed channel h_d + sum_n conj(phi_n) h_rn of one user.
    ComplexVector effective(const RcVector& phi, std::size_t user) const;
    /// All users' estimated superimposed channels as M x K columns.
    ComplexMatrix effective_all(const RcVector& phi) const;
};

/// Estimate of the superimposed channels of one training period; column k
/// belongs to user k.
struct SuperimposedEstimate {
    ComplexMatrix h;   // M x K
};

/// Error-variance laws of the estimators, all relative to sigma^2 = sigma_z^2 / alpha.
struct ErrorStats {
    double sigma_d2 = 0.0;   // direct-channel error power
    double sigma_r2 = 0.0;   // per reflected channel error power
    double sigma_q2 = 0.0;   // superimposed-channel error power
    double sigma2 = 0.0;     // base sigma^2
    std::size_t pilot_slots = 0;   // tau; one training period (K) for superimposed
};

/// Closed-form MSE laws: onoff (s2, 2 s2), three-phase (s2, 2 s2 / N),
/// dft (s2/(N+1), s2/(N+1)), superimposed s2/K.
ErrorStats mse_stats(EstimatorKind method, std::size_t elements, std::size_t users, double sigma2);

/// DFT-based training matrix G = sqrt(alpha) (X kron F^H) with F the (N+1)-point
/// DFT; shape K(N+1) x P(N+1) and G G^H = alpha K (N+1) I.
ComplexMatrix dft_training_matrix(std::size_t elements, const PilotConfig& pilots);

/// [H_1 ... H_K], M x K(N+1).
ComplexMatrix stack_cascaded(const ChannelRealization& ch);

/// Received block Y = H G + Z with Z ~ CN(0, noise_bs_mw) per entry.
ComplexMatrix simulate_uplink_cascaded(const ChannelRealization& ch, const ComplexMatrix& g,
                                       double noise_bs_mw, RngStream& rng);

/// LS estimate H = Y G^H (G G^H)^-1 split into per-user stacks.
CascadedEstimate ls_cascaded(const ComplexMatrix& y, const ComplexMatrix& g, std::size_t users);

/// Single-user ON/OFF estimator over N+1 slots: all elements off, then one
/// element at a time switched on with phi = 1.
CascadedEstimate onoff_estimate_single_user(const ChannelRealization& ch, double noise_bs_mw,
                                            double pilot_power_mw, RngStream& rng);

/// Truth plus independent CN(0, sigma_d2) / CN(0, sigma_r2) errors on every entry.
CascadedEstimate inject_errors(const ChannelRealization& ch, const ErrorStats& stats, RngStream& rng,
                               EstimatorKind method = EstimatorKind::perfect);

/// Truth (M x K superimposed channels) plus CN(0, sigma_q2) errors.
SuperimposedEstimate inject_errors(const ComplexMatrix& superimposed, const ErrorStats& stats,
                                   RngStream& rng);

/// One superimposed training period: Y = sqrt(alpha) H_q X + Z and
/// H_q_hat = Y X^H / (K sqrt(alpha)).
SuperimposedEstimate estimate_superimposed(const ChannelRealization& ch, const RcVector& phi,
                                           const PilotConfig& pilots, double noise_bs_mw,
                                           RngStream& rng);

} // namespace ristrain
