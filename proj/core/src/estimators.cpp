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

#include "ristrain/estimators.hpp"
#include "ristrain/error.hpp"

#include <cmath>
#include <string>

namespace ristrain {

namespace {

void check_noise(double noise)
{
    if (!(noise >= 0.0) || !std::isfinite(noise))
        throw Error(ErrorCode::invalid_argument, "noise power must be non-negative");
}

void check_power(double alpha)
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::invalid_argument, "pilot power must be positive");
}

void check_stats(const ErrorStats& s)
{
    for (double v : {s.sigma_d2, s.sigma_r2, s.sigma_q2})
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::invalid_argument, "error variances must be finite and non-negative");
}

} // namespace

std::string_view to_string(EstimatorKind kind) noexcept
{
    switch (kind) {
    case EstimatorKind::onoff: return "onoff";
    case EstimatorKind::three_phase: return "three-phase";
    case EstimatorKind::dft: return "dft";
    case EstimatorKind::superimposed: return "superimposed";
    case EstimatorKind::perfect: return "perfect";
    }
    return "unknown";
}

EstimatorKind parse_estimator(std::string_view name)
{
    if (name == "onoff")
        return EstimatorKind::onoff;
    if (name == "three-phase" || name == "three_phase")
        return EstimatorKind::three_phase;
    if (name == "dft")
        return EstimatorKind::dft;
    if (name == "superimposed" || name == "training")
        return EstimatorKind::superimposed;
    if (name == "perfect")
        return EstimatorKind::perfect;
    throw Error(ErrorCode::unknown_method, "unknown estimator '" + std::string(name) + "'");
}

PilotConfig orthogonal_pilots(std::size_t users, double power_mw)
{
    if (users == 0)
        throw Error(ErrorCode::invalid_dimension, "at least one user is required");
    check_power(power_mw);
    PilotConfig p;
    p.users = users;
    p.power_mw = power_mw;
    p.x = dft_matrix(users);
    p.groups = users;
    return p;
}

// ---------------------------------------------------------------- CascadedEstimate

std::size_t CascadedEstimate::antennas() const noexcept
{
    return stacks.empty() ? 0 : static_cast<std::size_t>(stacks.front().rows());
}

std::size_t CascadedEstimate::elements() const noexcept
{
    return stacks.empty() ? 0 : static_cast<std::size_t>(stacks.front().cols() - 1);
}

ComplexVector CascadedEstimate::direct(std::size_t user) const
{
    if (user >= users())
        throw Error(ErrorCode::invalid_dimension, "user index out of range");
    return stacks[user].col(0);
}

ComplexVector CascadedEstimate::reflected(std::size_t user, std::size_t element) const
{
    if (user >= users() || element >= elements())
        throw Error(ErrorCode::invalid_dimension, "user or element index out of range");
    return stacks[user].col(static_cast<Eigen::Index>(element) + 1);
}

ComplexVector CascadedEstimate::effective(const RcVector& phi, std::size_t user) const
{
    if (user >= users())
        throw Error(ErrorCode::invalid_dimension, "user index out of range");
    if (phi.size() != elements())
        throw Error(ErrorCode::invalid_dimension, "RC vector length does not match the estimate");
    const ComplexMatrix& h = stacks[user];
    return h.col(0) + h.rightCols(h.cols() - 1) * phi.coefficients().conjugate();
}

ComplexMatrix CascadedEstimate::effective_all(const RcVector& phi) const
{
    ComplexMatrix out(static_cast<Eigen::Index>(antennas()), static_cast<Eigen::Index>(users()));
    for (std::size_t k = 0; k < users(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = effective(phi, k);
    return out;
}

// ---------------------------------------------------------------- MSE laws

ErrorStats mse_stats(EstimatorKind method, std::size_t elements, std::size_t users, double sigma2)
{
    if (elements == 0)
        throw Error(ErrorCode::invalid_dimension, "MSE laws need at least one RIS element");
    if (users == 0)
        throw Error(ErrorCode::invalid_dimension, "MSE laws need at least one user");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw Error(ErrorCode::invalid_argument, "sigma^2 must be non-negative");

    const double n = static_cast<double>(elements);
    ErrorStats s;
    s.sigma2 = sigma2;
    s.pilot_slots = elements + 1;
    switch (method) {
    case EstimatorKind::onoff:
        s.sigma_d2 = sigma2;
        s.sigma_r2 = 2.0 * sigma2;
        break;
    case EstimatorKind::three_phase:
        s.sigma_d2 = sigma2;
        s.sigma_r2 = 2.0 * sigma2 / n;
        break;
    case EstimatorKind::dft:
        s.sigma_d2 = sigma2 / (n + 1.0);
        s.sigma_r2 = sigma2 / (n + 1.0);
        break;
    case EstimatorKind::superimposed:
        s.sigma_q2 = sigma2 / static_cast<double>(users);
        s.pilot_slots = users;
        break;
    case EstimatorKind::perfect:
        s.pilot_slots = 0;
        break;
    default:
        throw Error(ErrorCode::unknown_method, "no MSE law for this estimator");
    }
    return s;
}

// ---------------------------------------------------------------- DFT / LS

ComplexMatrix dft_training_matrix(std::size_t elements, const PilotConfig& pilots)
{
    const auto k = static_cast<Eigen::Index>(pilots.users);
    if (pilots.x.rows() != k || pilots.x.cols() != k || pilots.groups != pilots.users)
        throw Error(ErrorCode::invalid_dimension, "DFT training needs P = K pilot groups");
    check_power(pilots.power_mw);
    Eigen::FullPivLU<ComplexMatrix> lu(pilots.x);
    if (lu.rank() < k)
        throw Error(ErrorCode::singular_training, "pilot matrix is rank deficient");

    const ComplexMatrix f = dft_matrix(elements + 1);
    return std::sqrt(pilots.power_mw) * kron(pilots.x, f.adjoint());
}

ComplexMatrix stack_cascaded(const ChannelRealization& ch)
{
    const auto m = static_cast<Eigen::Index>(ch.antennas());
    const auto w = static_cast<Eigen::Index>(ch.elements() + 1);
    ComplexMatrix h(m, w * static_cast<Eigen::Index>(ch.users()));
    for (std::size_t k = 0; k < ch.users(); ++k)
        h.middleCols(static_cast<Eigen::Index>(k) * w, w) = ch.cascaded[k];
    return h;
}

ComplexMatrix simulate_uplink_cascaded(const ChannelRealization& ch, const ComplexMatrix& g,
                                       double noise_bs_mw, RngStream& rng)
{
    check_noise(noise_bs_mw);
    const ComplexMatrix h = stack_cascaded(ch);
    if (g.rows() != h.cols())
        throw Error(ErrorCode::invalid_dimension,
                    "training matrix has " + std::to_string(g.rows()) + " rows, expected " +
                        std::to_string(h.cols()));
    ComplexMatrix y = h * g;
    y += sample_cgauss(rng, static_cast<std::size_t>(y.rows()), static_cast<std::size_t>(y.cols()),
                       noise_bs_mw);
    return y;
}

CascadedEstimate ls_cascaded(const ComplexMatrix& y, const ComplexMatrix& g, std::size_t users)
{
    if (users == 0 || g.rows() % static_cast<Eigen::Index>(users) != 0)
        throw Error(ErrorCode::invalid_dimension, "training matrix rows must be a multiple of K");
    if (y.cols() != g.cols())
        throw Error(ErrorCode::invalid_dimension, "received block and training matrix disagree");

    const ComplexMatrix gram = g * g.adjoint();
    ComplexMatrix h_adj;
    try {
        h_adj = solve_hermitian_pd(gram, g * y.adjoint());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::numeric_failure)
            throw Error(ErrorCode::singular_training, "training Gram matrix is singular");
        throw;
    }
    const ComplexMatrix h = h_adj.adjoint();

    const Eigen::Index w = g.rows() / static_cast<Eigen::Index>(users);
    CascadedEstimate est;
    est.method = EstimatorKind::dft;
    est.pilot_slots = static_cast<std::size_t>(g.cols());
    est.stacks.reserve(users);
    for (std::size_t k = 0; k < users; ++k)
        est.stacks.push_back(h.middleCols(static_cast<Eigen::Index>(k) * w, w));
    return est;
}

CascadedEstimate onoff_estimate_single_user(const ChannelRealization& ch, double noise_bs_mw,
                                            double pilot_power_mw, RngStream& rng)
{
    if (ch.users() != 1)
        throw Error(ErrorCode::unsupported,
                    "explicit ON/OFF estimation is single-user; use mse_stats with inject_errors");
    check_noise(noise_bs_mw);
    check_power(pilot_power_mw);

    const ComplexMatrix& h = ch.cascaded.front();
    const auto m = static_cast<std::size_t>(h.rows());
    const Eigen::Index n = h.cols() - 1;
    const double amp = std::sqrt(pilot_power_mw);

    CascadedEstimate est;
    est.method = EstimatorKind::onoff;
    est.pilot_slots = static_cast<std::size_t>(n) + 1;
    ComplexMatrix s(h.rows(), h.cols());

    const ComplexVector y0 = amp * h.col(0) + sample_cgauss(rng, m, 1, noise_bs_mw).col(0);
    s.col(0) = y0 / amp;
    for (Eigen::Index e = 1; e <= n; ++e) {
        const ComplexVector yn =
            amp * (h.col(0) + h.col(e)) + sample_cgauss(rng, m, 1, noise_bs_mw).col(0);
        s.col(e) = yn / amp - s.col(0);
    }
    est.stacks.push_back(std::move(s));
    return est;
}

CascadedEstimate inject_errors(const ChannelRealization& ch, const ErrorStats& stats, RngStream& rng,
                               EstimatorKind method)
{
    check_stats(stats);
    CascadedEstimate est;
    est.method = method;
    est.pilot_slots = stats.pilot_slots;
    est.stacks.reserve(ch.users());
    for (const ComplexMatrix& h : ch.cascaded) {
        const auto m = static_cast<std::size_t>(h.rows());
        const auto n = static_cast<std::size_t>(h.cols() - 1);
        ComplexMatrix s = h;
        s.col(0) += sample_cgauss(rng, m, 1, stats.sigma_d2).col(0);
        if (n > 0)
            s.rightCols(static_cast<Eigen::Index>(n)) += sample_cgauss(rng, m, n, stats.sigma_r2);
        est.stacks.push_back(std::move(s));
    }
    return est;
}

SuperimposedEstimate inject_errors(const ComplexMatrix& superimposed, const ErrorStats& stats,
                                   RngStream& rng)
{
    check_stats(stats);
    SuperimposedEstimate est;
    est.h = superimposed + sample_cgauss(rng, static_cast<std::size_t>(superimposed.rows()),
                                         static_cast<std::size_t>(superimposed.cols()),
                                         stats.sigma_q2);
    return est;
}

SuperimposedEstimate estimate_superimposed(const ChannelRealization& ch, const RcVector& phi,
                                           const PilotConfig& pilots, double noise_bs_mw,
                                           RngStream& rng)
{
    check_noise(noise_bs_mw);
    check_power(pilots.power_mw);
    const auto k = static_cast<Eigen::Index>(ch.users());
    if (pilots.users != ch.users() || pilots.x.rows() != k || pilots.x.cols() != k)
        throw Error(ErrorCode::invalid_pilot, "superimposed training needs a K x K pilot matrix");
    const ComplexMatrix gram = pilots.x * pilots.x.adjoint();
    const ComplexMatrix target = static_cast<double>(k) * ComplexMatrix::Identity(k, k);
    if ((gram - target).norm() > 1e-9 * target.norm())
        throw Error(ErrorCode::invalid_pilot, "pilot rows are not orthogonal with X X^H = K I");

    const double amp = std::sqrt(pilots.power_mw);
    const ComplexMatrix hq = superimpose_all(ch, phi);
    ComplexMatrix y = amp * hq * pilots.x;
    y += sample_cgauss(rng, static_cast<std::size_t>(y.rows()), static_cast<std::size_t>(y.cols()),
                       noise_bs_mw);

    SuperimposedEstimate est;
    est.h = y * pilots.x.adjoint() / (static_cast<double>(k) * amp);
    return est;
}

} // namespace ristrain
