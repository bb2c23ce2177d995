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

#include "ristrain/beamforming.hpp"
#include "ristrain/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ristrain {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void check_problem(const ComplexMatrix& h, std::span<const double> gamma, double noise)
{
    if (h.cols() == 0 || h.rows() == 0)
        throw Error(ErrorCode::invalid_dimension, "need at least one user and one antenna");
    if (static_cast<std::size_t>(h.cols()) != gamma.size())
        throw Error(ErrorCode::invalid_dimension,
                    "got " + std::to_string(gamma.size()) + " SINR targets for " +
                        std::to_string(h.cols()) + " users");
    if (!(noise > 0.0) || !std::isfinite(noise))
        throw Error(ErrorCode::invalid_argument, "noise power must be positive");
    for (double g : gamma)
        if (!(g > 0.0) || !std::isfinite(g))
            throw Error(ErrorCode::invalid_argument, "SINR targets must be positive");
}

// Gram of cross gains, G(k, j) = |h_k^H u_j|^2.
RealMatrix cross_gains(const ComplexMatrix& h, const ComplexMatrix& u)
{
    return (h.adjoint() * u).cwiseAbs2();
}

// Scratch buffers for the candidate objective, reused across AO evaluations.
struct FixedPointWork {
    ComplexMatrix a;
    ComplexMatrix x;
    Eigen::LLT<ComplexMatrix> llt;
    RealVector next;
};

// Total minimum power of one candidate channel. Single-user problems reduce
// to gamma sigma^2 / ||h||^2. Multiuser ones run the warm-started fixed point
// and return the dual sum of multipliers, which equals the downlink total at
// convergence.
double min_total_power(const ComplexMatrix& h, std::span<const double> gamma, double noise,
                       const SolveOptions& opts, const RealVector& start, RealVector& lambda_out,
                       FixedPointWork& w)
{
    const Eigen::Index k = h.cols();
    if (k == 1) {
        const double n2 = h.col(0).squaredNorm();
        return n2 > 0.0 && std::isfinite(n2) ? gamma[0] * noise / n2 : inf;
    }
    lambda_out.resize(k);
    w.next.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double n2 = h.col(i).squaredNorm();
        if (!(n2 > 0.0) || !std::isfinite(n2))
            return inf;
        const double l0 = gamma[static_cast<std::size_t>(i)] * noise / n2;
        w.next(i) = l0 * opts.lambda_cap;
        lambda_out(i) = start.size() == k && start(i) > 0.0 && std::isfinite(start(i)) ? start(i) : l0;
    }
    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        w.a.noalias() = h * lambda_out.cast<cplx>().asDiagonal() * h.adjoint();
        w.a.diagonal().array() += noise;
        w.llt.compute(w.a);
        if (w.llt.info() != Eigen::Success)
            return inf;
        w.x = w.llt.solve(h);
        double change = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double q = std::real(h.col(i).dot(w.x.col(i)));
            const double g = gamma[static_cast<std::size_t>(i)];
            // Undamped form gamma / (h^H B^-1 h) with B = A - lambda h h^H; same
            // fixed point, far fewer iterations at high targets.
            const double nx = g * (1.0 - lambda_out(i) * q) / q;
            if (!(nx > 0.0) || !std::isfinite(nx) || nx > w.next(i))
                return inf;
            change = std::max(change, std::abs(nx - lambda_out(i)) / lambda_out(i));
            lambda_out(i) = nx;
        }
        if (change < opts.tol)
            return lambda_out.sum();
    }
    return inf;
}

} // namespace

void SolveOptions::validate() const
{
    if (!(tol > 0.0))
        throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
    if (phase_grid_size < 2)
        throw Error(ErrorCode::invalid_argument, "phase grid needs at least 2 points");
    if (max_iterations == 0 || ao_max_rounds == 0 || restarts == 0)
        throw Error(ErrorCode::invalid_argument, "iteration limits must be positive");
    if (!(lambda_cap > 1.0))
        throw Error(ErrorCode::invalid_argument, "lambda cap must exceed 1");
}

ComplexMatrix PrecoderSet::directions() const
{
    ComplexMatrix u = w;
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        const double n = u.col(k).norm();
        if (n > 0.0)
            u.col(k) /= n;
    }
    return u;
}

std::vector<double> sinr(const ComplexMatrix& h, const ComplexMatrix& w, double noise_user_mw)
{
    if (h.rows() != w.rows() || h.cols() != w.cols())
        throw Error(ErrorCode::invalid_dimension, "channels and precoders must both be M x K");
    if (!(noise_user_mw > 0.0))
        throw Error(ErrorCode::invalid_argument, "noise power must be positive");
    const RealMatrix g = cross_gains(h, w);
    std::vector<double> out(static_cast<std::size_t>(h.cols()));
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
        const double interference = g.row(k).sum() - g(k, k);
        out[static_cast<std::size_t>(k)] = g(k, k) / (interference + noise_user_mw);
    }
    return out;
}

std::vector<double> sinr(const ComplexMatrix& h, const PrecoderSet& precoders, double noise_user_mw)
{
    return sinr(h, precoders.w, noise_user_mw);
}

std::optional<RealVector> powers_for_directions(const ComplexMatrix& h, const ComplexMatrix& directions,
                                                std::span<const double> gamma, double noise_user_mw)
{
    check_problem(h, gamma, noise_user_mw);
    if (directions.rows() != h.rows() || directions.cols() != h.cols())
        throw Error(ErrorCode::invalid_dimension, "directions must match the channel shape");

    const Eigen::Index k = h.cols();
    const RealMatrix g = cross_gains(h, directions);
    RealMatrix d = -g;
    for (Eigen::Index i = 0; i < k; ++i)
        d(i, i) = g(i, i) / gamma[static_cast<std::size_t>(i)];

    Eigen::FullPivLU<RealMatrix> lu(d);
    if (!lu.isInvertible())
        return std::nullopt;
    RealVector p = lu.solve(RealVector::Constant(k, noise_user_mw));
    if (!p.allFinite() || (p.array() <= 0.0).any())
        return std::nullopt;
    return p;
}

static std::optional<PowerMinResult> solve_impl(const ComplexMatrix& h, std::span<const double> gamma,
                                                double noise_user_mw, const SolveOptions& opts,
                                                const RealVector* lambda_start)
{
    check_problem(h, gamma, noise_user_mw);
    const Eigen::Index m = h.rows();
    const Eigen::Index k = h.cols();

    RealVector norms2 = h.colwise().squaredNorm().transpose();
    if (!norms2.allFinite() || (norms2.array() <= 0.0).any())
        return std::nullopt;

    PowerMinResult res;
    RealVector lambda0(k);
    for (Eigen::Index i = 0; i < k; ++i)
        lambda0(i) = gamma[static_cast<std::size_t>(i)] * noise_user_mw / norms2(i);

    if (k == 1) {
        const double p = lambda0(0);
        res.precoders.w = std::sqrt(p) * h / std::sqrt(norms2(0));
        res.precoders.powers = RealVector::Constant(1, p);
        res.precoders.total_mw = p;
        res.dual.lambda = lambda0;
        res.dual.coupling = RealMatrix::Constant(1, 1, norms2(0) / gamma[0]);
        res.dual.converged = true;
        return res;
    }

    RealVector lambda = lambda0;
    if (lambda_start && lambda_start->allFinite() && (lambda_start->array() > 0.0).all())
        lambda = *lambda_start;
    ComplexMatrix a(m, m);
    auto build = [&](const RealVector& lam) {
        a = h * lam.cast<cplx>().asDiagonal() * h.adjoint();
        a.diagonal().array() += noise_user_mw;
    };

    bool converged = false;
    std::size_t it = 0;
    while (it < opts.max_iterations) {
        ++it;
        build(lambda);
        Eigen::LLT<ComplexMatrix> llt(a);
        if (llt.info() != Eigen::Success)
            return std::nullopt;
        const ComplexMatrix x = llt.solve(h);
        RealVector next(k);
        double change = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double q = std::real(h.col(i).dot(x.col(i)));
            const double g = gamma[static_cast<std::size_t>(i)];
            next(i) = g / (1.0 + g) / q;
            change = std::max(change, std::abs(next(i) - lambda(i)) / lambda(i));
        }
        if (!next.allFinite() || (next.array() <= 0.0).any() ||
            (next.array() > opts.lambda_cap * lambda0.array()).any())
            return std::nullopt;
        lambda = next;
        if (change < opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        return std::nullopt;

    build(lambda);
    ComplexMatrix u = Eigen::LLT<ComplexMatrix>(a).solve(h);
    for (Eigen::Index i = 0; i < k; ++i)
        u.col(i).normalize();

    const auto p = powers_for_directions(h, u, gamma, noise_user_mw);
    if (!p)
        return std::nullopt;

    const RealMatrix g = cross_gains(h, u);
    RealMatrix coupling = -g.transpose();
    for (Eigen::Index i = 0; i < k; ++i)
        coupling(i, i) = g(i, i) / gamma[static_cast<std::size_t>(i)];

    res.precoders.w = u * p->cwiseSqrt().cast<cplx>().asDiagonal();
    res.precoders.powers = *p;
    res.precoders.total_mw = p->sum();
    res.dual.lambda = lambda;
    res.dual.coupling = std::move(coupling);
    res.dual.iterations = it;
    res.dual.converged = true;
    return res;
}

std::optional<PowerMinResult> try_solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                                                  double noise_user_mw, const SolveOptions& opts)
{
    return solve_impl(h, gamma, noise_user_mw, opts, nullptr);
}

std::optional<PowerMinResult> try_solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                                                  double noise_user_mw, const SolveOptions& opts,
                                                  const RealVector& lambda_start)
{
    if (lambda_start.size() != h.cols())
        throw Error(ErrorCode::invalid_dimension, "lambda_start must have one entry per user");
    return solve_impl(h, gamma, noise_user_mw, opts, &lambda_start);
}

PowerMinResult solve_power_min(const ComplexMatrix& h, std::span<const double> gamma,
                               double noise_user_mw, const SolveOptions& opts)
{
    auto res = try_solve_power_min(h, gamma, noise_user_mw, opts);
    if (!res)
        throw Error(ErrorCode::infeasible_targets, "SINR targets cannot be met on these channels");
    return std::move(*res);
}

RcVector align_rc_single_user(const CascadedEstimate& est)
{
    if (est.users() != 1 || est.antennas() != 1)
        throw Error(ErrorCode::unsupported, "RC alignment needs a single-user, single-antenna estimate");
    const ComplexMatrix& s = est.stacks.front();
    const cplx hd = s(0, 0);
    ComplexVector phi(static_cast<Eigen::Index>(est.elements()));
    for (Eigen::Index n = 0; n < phi.size(); ++n) {
        const cplx prod = s(0, n + 1) * std::conj(hd);
        const double mag = std::abs(prod);
        phi(n) = mag > 0.0 ? prod / mag : cplx(1.0, 0.0);
    }
    return RcVector(std::move(phi));
}

AoResult optimize_rc_ao(const CascadedEstimate& est, std::span<const double> gamma,
                        double noise_user_mw, const SolveOptions& opts, RngStream& rng)
{
    opts.validate();
    const std::size_t k = est.users();
    const std::size_t n = est.elements();
    if (k == 0)
        throw Error(ErrorCode::invalid_dimension, "estimate holds no users");

    AoResult out;
    if (n == 0) {
        out.phi = RcVector::ones(0);
        auto res = solve_power_min(est.effective_all(out.phi), gamma, noise_user_mw, opts);
        out.objective_trace.push_back(res.precoders.total_mw);
        out.precoders = std::move(res.precoders);
        out.dual = std::move(res.dual);
        return out;
    }

    const auto m = static_cast<Eigen::Index>(est.antennas());
    const auto kk = static_cast<Eigen::Index>(k);
    ComplexMatrix direct(m, kk);
    std::vector<ComplexMatrix> refl(n, ComplexMatrix(m, kk));
    for (Eigen::Index u = 0; u < kk; ++u) {
        const ComplexMatrix& s = est.stacks[static_cast<std::size_t>(u)];
        direct.col(u) = s.col(0);
        for (std::size_t e = 0; e < n; ++e)
            refl[e].col(u) = s.col(static_cast<Eigen::Index>(e) + 1);
    }

    const double grid_step = 2.0 * std::numbers::pi / static_cast<double>(opts.phase_grid_size);
    const double fine_step = grid_step / 8.0;

    FixedPointWork work;
    double best_total = inf;
    std::vector<double> best_phases;
    std::vector<double> best_trace;

    for (std::size_t r = 0; r < opts.restarts; ++r) {
        std::vector<double> theta(n);
        for (double& t : theta)
            t = rng.uniform_phase();

        ComplexMatrix heff = direct;
        for (std::size_t e = 0; e < n; ++e)
            heff += std::conj(std::polar(1.0, theta[e])) * refl[e];

        RealVector lam;
        RealVector lam_cand;
        RealVector lam_best;
        double f = min_total_power(heff, gamma, noise_user_mw, opts, RealVector(), lam, work);
        if (!std::isfinite(f))
            lam.resize(0);
        std::vector<double> trace{f};

        ComplexMatrix base(m, kk);
        ComplexMatrix cand(m, kk);
        for (std::size_t round = 0; round < opts.ao_max_rounds; ++round) {
            const double f_start = f;
            for (std::size_t e = 0; e < n; ++e) {
                base = heff - std::conj(std::polar(1.0, theta[e])) * refl[e];
                double cand_best = f;
                double cand_theta = theta[e];
                auto consider = [&](double t) {
                    cand = base + std::conj(std::polar(1.0, t)) * refl[e];
                    const double fc = min_total_power(cand, gamma, noise_user_mw, opts, lam, lam_cand, work);
                    if (fc < cand_best) {
                        cand_best = fc;
                        cand_theta = t;
                        lam_best = lam_cand;
                    }
                };
                for (std::size_t j = 0; j < opts.phase_grid_size; ++j)
                    consider(grid_step * static_cast<double>(j));
                const double centre = cand_theta;
                for (int j = -7; j <= 7; ++j)
                    if (j != 0)
                        consider(centre + fine_step * j);

                if (cand_best < f) {
                    theta[e] = cand_theta;
                    heff = base + std::conj(std::polar(1.0, cand_theta)) * refl[e];
                    f = cand_best;
                    lam = lam_best;
                    trace.push_back(f);
                }
            }
            if (!std::isfinite(f))
                break;
            if (std::isfinite(f_start) && (f_start - f) / f_start < opts.tol)
                break;
        }

        if (f < best_total) {
            best_total = f;
            best_phases = theta;
            best_trace = std::move(trace);
        }
    }

    if (!std::isfinite(best_total))
        throw Error(ErrorCode::infeasible_targets, "no RC candidate makes the SINR targets feasible");

    out.phi = RcVector::from_phases(best_phases);
    auto res = solve_power_min(est.effective_all(out.phi), gamma, noise_user_mw, opts);
    out.precoders = std::move(res.precoders);
    out.dual = std::move(res.dual);
    out.objective_trace = std::move(best_trace);
    return out;
}

} // namespace ristrain
