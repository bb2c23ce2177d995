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

#include "ristrain/theory.hpp"
#include "ristrain/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ristrain::theory {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t series_limit = 15;

void check_periods(std::size_t q)
{
    if (q == 0)
        throw Error(ErrorCode::invalid_argument, "Q must be at least 1");
}

// sqrt(rho_r2) * sqrt(rho_d2) cross term shared by every law.
double cross(const ClosedFormInputs& in) { return std::sqrt(in.rho_r2 * in.rho_d2); }

double law(const ClosedFormInputs& in, double cross_factor, double pair_factor)
{
    const double n = static_cast<double>(in.elements);
    return in.power_mw * (n * in.rho_r2 + in.rho_d2 + 0.5 * pi * n * cross_factor +
                          0.25 * pi * n * (n - 1.0) * pair_factor);
}

} // namespace

void ClosedFormInputs::validate() const
{
    for (double v : {power_mw, rho_r2, rho_d2, sigma_r2, sigma_d2, sigma_q2})
        if (!(v >= 0.0) || std::isnan(v))
            throw Error(ErrorCode::invalid_argument, "closed-form powers must be non-negative");
    if (elements == 0)
        throw Error(ErrorCode::invalid_argument, "N must be at least 1");
    check_periods(periods);
}

double g_of_Q_series(std::size_t q)
{
    check_periods(q);
    const int qi = static_cast<int>(q);
    const int terms = qi / 2;   // ceil((Q-1)/2)
    double sum = 0.0;
    for (int i = 1; i <= terms; ++i) {
        const int a = qi - 2 * i;
        const double f = a == 0 ? 2.0 : 1.0 / std::tgamma(a + 1.0);
        sum += (i % 2 == 1 ? 1.0 : -1.0) * f * std::pow(pi, a);
    }
    return std::tgamma(qi + 1.0) / std::pow(pi, qi) * sum;
}

double g_of_Q_integral(std::size_t q)
{
    check_periods(q);
    const double qd = static_cast<double>(q);
    // g = 1 - int_0^pi (1 - u/pi)^Q sin u du. The weight decays like
    // exp(-Q u / pi), so beyond 60 pi / Q the remainder is below 1e-26.
    auto integrand = [qd](double u) { return std::exp(qd * std::log1p(-u / pi)) * std::sin(u); };
    const double upper = std::min(pi, 60.0 * pi / qd);
    double err = 0.0;
    const double v = 1.0 - boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                               integrand, 0.0, upper, 15, 1e-12, &err);
    if (err > 1e-10)
        throw Error(ErrorCode::numeric_failure, "g(Q) quadrature did not reach 1e-10");
    return v;
}

double g_of_Q(std::size_t q)
{
    return q <= series_limit ? g_of_Q_series(q) : g_of_Q_integral(q);
}

MonteCarloEstimate mean_max_cos_oracle(std::size_t q, std::size_t samples, RngStream& rng)
{
    check_periods(q);
    if (samples < 10000)
        throw Error(ErrorCode::invalid_argument, "the oracle needs at least 1e4 samples");
    double sum = 0.0;
    double sum2 = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        double best = -1.0;
        for (std::size_t i = 0; i < q; ++i)
            best = std::max(best, std::cos(rng.uniform_phase()));
        sum += best;
        sum2 += best * best;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
    return {mean, 3.0 * std::sqrt(var / n)};
}

double equipartition_mean_cos(std::size_t q)
{
    check_periods(q);
    const double x = pi / static_cast<double>(q);
    return std::sin(x) / x;
}

PowerLaw power_random_training(const ClosedFormInputs& in)
{
    in.validate();
    const double g = g_of_Q(in.periods);
    return {law(in, cross(in) * g, in.rho_r2 * g * g),
            in.elements == 1 ? LawKind::exact : LawKind::upper};
}

PowerLaw power_equipartition_upper(const ClosedFormInputs& in)
{
    in.validate();
    const double s = equipartition_mean_cos(in.periods);
    return {law(in, cross(in) * s, in.rho_r2 * s * s),
            in.elements == 1 ? LawKind::exact : LawKind::upper};
}

double power_optimal(const ClosedFormInputs& in)
{
    in.validate();
    return law(in, cross(in), in.rho_r2);
}

double power_noisy_alignment(const ClosedFormInputs& in)
{
    in.validate();
    const double er = in.rho_r2 + in.sigma_r2;
    const double ed = in.rho_d2 + in.sigma_d2;
    const double c = er > 0.0 && ed > 0.0 ? in.rho_r2 * in.rho_d2 / std::sqrt(er * ed) : 0.0;
    const double p = er > 0.0 ? in.rho_r2 * in.rho_r2 / er : 0.0;
    return law(in, c, p);
}

double power_noisy_training_upper(const ClosedFormInputs& in)
{
    in.validate();
    const double g = g_of_Q(in.periods);
    const double eq = in.rho_r2 + in.sigma_q2;
    const double c = eq > 0.0 ? in.rho_r2 / std::sqrt(eq) * std::sqrt(in.rho_d2) : 0.0;
    const double p = eq > 0.0 ? in.rho_r2 * in.rho_r2 / eq : 0.0;
    return law(in, c * g, p * g * g);
}

double asymptotic_ratio(AsymptoticKind kind, const ClosedFormInputs& in)
{
    in.validate();
    if (kind == AsymptoticKind::training) {
        const double g = g_of_Q(in.periods);
        return g * g;
    }
    const double er = in.rho_r2 + in.sigma_r2;
    return er > 0.0 ? in.rho_r2 / er : 0.0;
}

double achievable_rate(const RateInputs& in)
{
    if (in.tau_co == 0 || in.tau > in.tau_co)
        throw Error(ErrorCode::invalid_argument,
                    "training length " + std::to_string(in.tau) + " exceeds the coherence interval");
    if (!(in.noise_mw > 0.0) || !(in.received_power_mw >= 0.0))
        throw Error(ErrorCode::invalid_argument, "rate needs positive noise and non-negative power");
    const double prelog =
        static_cast<double>(in.tau_co - in.tau) / static_cast<double>(in.tau_co);
    return prelog * std::log2(1.0 + in.received_power_mw / in.noise_mw);
}

} // namespace ristrain::theory
