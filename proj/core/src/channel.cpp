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

#include "ristrain/channel.hpp"
#include "ristrain/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ristrain {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double centered(std::size_t i, std::size_t count)
{
    return static_cast<double>(i) - 0.5 * (static_cast<double>(count) - 1.0);
}

const Vec3& user_position(const ArrayGeometry& g, std::size_t user)
{
    if (user >= g.users())
        throw Error(ErrorCode::invalid_dimension,
                    "user index " + std::to_string(user) + " out of range");
    return g.user_positions[user];
}

// Transmitter/receiver centers of a link, in downlink direction.
std::pair<Vec3, Vec3> link_ends(const ArrayGeometry& g, LinkKind link, std::size_t user)
{
    switch (link) {
    case LinkKind::bs_ris:
        return {g.bs_center, g.ris_center};
    case LinkKind::ris_user:
        return {g.ris_center, user_position(g, user)};
    case LinkKind::bs_user:
        return {g.bs_center, user_position(g, user)};
    }
    throw Error(ErrorCode::invalid_argument, "unknown link kind");
}

ComplexMatrix draw_link(const ComplexMatrix& los, double gain, double beta, RngStream& rng)
{
    const double amp = std::sqrt(gain);
    if (std::isinf(beta))
        return amp * los;
    const double w_los = std::sqrt(beta / (beta + 1.0));
    const double w_nlos = std::sqrt(1.0 / (beta + 1.0));
    ComplexMatrix nlos = sample_cgauss(rng, static_cast<std::size_t>(los.rows()),
                                       static_cast<std::size_t>(los.cols()), 1.0);
    return amp * (w_los * los + w_nlos * nlos);
}

void check_user(const ChannelRealization& ch, std::size_t user)
{
    if (user >= ch.users())
        throw Error(ErrorCode::invalid_dimension,
                    "user index " + std::to_string(user) + " out of range");
}

void check_rc(const ChannelRealization& ch, const RcVector& phi)
{
    if (phi.size() != ch.elements())
        throw Error(ErrorCode::invalid_dimension,
                    "RC vector has " + std::to_string(phi.size()) + " entries, RIS has " +
                        std::to_string(ch.elements()));
}

} // namespace

// ---------------------------------------------------------------- geometry

void ArrayGeometry::set_ris_elements(std::size_t n)
{
    if (n > 0 && n % 10 == 0) {
        ris_nx = 10;
        ris_nz = n / 10;
    } else {
        ris_nx = n;
        ris_nz = 1;
    }
}

Vec3 ArrayGeometry::bs_element_offset(std::size_t m) const
{
    return {centered(m, bs_antennas) * element_spacing, 0.0, 0.0};
}

Vec3 ArrayGeometry::ris_element_offset(std::size_t n) const
{
    const std::size_t ix = n / ris_nz;
    const std::size_t iz = n % ris_nz;
    return {centered(ix, ris_nx) * element_spacing, 0.0, centered(iz, ris_nz) * element_spacing};
}

void ArrayGeometry::validate() const
{
    if (bs_antennas == 0)
        throw Error(ErrorCode::invalid_dimension, "BS needs at least one antenna");
    if (ris_nz == 0)
        throw Error(ErrorCode::invalid_dimension, "ris_nz must be at least 1");
    if (!(element_spacing > 0.0) || !std::isfinite(element_spacing))
        throw Error(ErrorCode::invalid_geometry, "element spacing must be positive");
    if ((ris_center - bs_center).norm() <= 0.0)
        throw Error(ErrorCode::invalid_geometry, "BS and RIS centers coincide");
}

void LinkParams::validate() const
{
    if (!(c0 > 0.0) || !std::isfinite(c0))
        throw Error(ErrorCode::invalid_argument, "c0 must be positive");
    if (!(exponent >= 0.0) || !std::isfinite(exponent))
        throw Error(ErrorCode::invalid_argument, "path-loss exponent must be non-negative");
    if (!(rician_beta >= 0.0))
        throw Error(ErrorCode::invalid_argument, "Rician factor must be non-negative");
}

void ScenarioConfig::validate() const
{
    geometry.validate();
    const std::size_t k = users();
    if (k == 0)
        throw Error(ErrorCode::invalid_dimension, "scenario needs at least one user");
    if (ris_user.size() != k || bs_user.size() != k)
        throw Error(ErrorCode::invalid_dimension, "per-user link parameters must match the user count");
    if (sinr_targets.size() != k)
        throw Error(ErrorCode::invalid_dimension, "one SINR target per user is required");
    bs_ris.validate();
    for (const auto& p : ris_user)
        p.validate();
    for (const auto& p : bs_user)
        p.validate();
    for (double v : {noise_bs_mw, noise_user_mw, pilot_power_mw, transmit_power_mw})
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(ErrorCode::invalid_argument, "powers must be positive and finite");
    for (double g : sinr_targets)
        if (!(g > 0.0) || !std::isfinite(g))
            throw Error(ErrorCode::invalid_argument, "SINR targets must be positive");
    if (coherence_symbols < 1)
        throw Error(ErrorCode::invalid_argument, "coherence length must be at least 1 symbol");
    for (std::size_t u = 0; u < k; ++u)
        for (LinkKind l : {LinkKind::ris_user, LinkKind::bs_user})
            if (!(link_distance(geometry, l, u) > 0.0))
                throw Error(ErrorCode::invalid_geometry,
                            "user " + std::to_string(u) + " coincides with an array center");
}

// ---------------------------------------------------------------- path loss / LoS

double path_loss(double distance_m, const LinkParams& params)
{
    if (!(distance_m >= 1.0))
        throw Error(ErrorCode::invalid_geometry,
                    "distance " + std::to_string(distance_m) + " m is inside the 1 m reference distance");
    return params.c0 * std::pow(distance_m, -params.exponent);
}

double link_distance(const ArrayGeometry& geometry, LinkKind link, std::size_t user)
{
    const auto [tx, rx] = link_ends(geometry, link, user);
    return (rx - tx).norm();
}

ComplexMatrix los_matrix(const ArrayGeometry& geometry, LinkKind link, std::size_t user)
{
    const auto [tx, rx] = link_ends(geometry, link, user);
    const Vec3 delta = rx - tx;
    const double dist = delta.norm();
    if (!(dist > 0.0))
        throw Error(ErrorCode::invalid_geometry, "link end points coincide");
    const Vec3 u = (1.0 / dist) * delta;

    // Phase of element offset p (wavelengths) projected on the propagation direction.
    std::vector<double> tx_proj;
    std::vector<double> rx_proj;
    switch (link) {
    case LinkKind::bs_ris:
        for (std::size_t m = 0; m < geometry.bs_antennas; ++m)
            tx_proj.push_back(geometry.bs_element_offset(m).dot(u));
        for (std::size_t n = 0; n < geometry.ris_elements(); ++n)
            rx_proj.push_back(geometry.ris_element_offset(n).dot(u));
        break;
    case LinkKind::ris_user:
        for (std::size_t n = 0; n < geometry.ris_elements(); ++n)
            tx_proj.push_back(geometry.ris_element_offset(n).dot(u));
        rx_proj.push_back(0.0);
        break;
    case LinkKind::bs_user:
        for (std::size_t m = 0; m < geometry.bs_antennas; ++m)
            tx_proj.push_back(geometry.bs_element_offset(m).dot(u));
        rx_proj.push_back(0.0);
        break;
    }

    const auto rows = static_cast<Eigen::Index>(rx_proj.size());
    const auto cols = static_cast<Eigen::Index>(tx_proj.size());
    ComplexMatrix h(rows, cols);
    if (rows == 0 || cols == 0)
        return h;
    // A transmit element ahead along u shortens the path, a receive element
    // ahead lengthens it. Referencing to element pair (0, 0) fixes the global phase.
    const double ref = tx_proj[0] - rx_proj[0];
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double excess = (tx_proj[static_cast<std::size_t>(c)] -
                                   rx_proj[static_cast<std::size_t>(r)]) - ref;
            h(r, c) = std::polar(1.0, two_pi * excess);
        }
    return h;
}

// ---------------------------------------------------------------- RC vector

RcVector::RcVector(ComplexVector coefficients) : coeffs_(std::move(coefficients))
{
    for (Eigen::Index n = 0; n < coeffs_.size(); ++n) {
        const double mag = std::abs(coeffs_(n));
        if (!(std::abs(mag - 1.0) <= modulus_tolerance))
            throw Error(ErrorCode::invalid_rc, "element " + std::to_string(n) +
                                                   " has modulus " + std::to_string(mag));
    }
}

RcVector RcVector::ones(std::size_t n)
{
    return RcVector(ComplexVector::Ones(static_cast<Eigen::Index>(n)));
}

RcVector RcVector::from_phases(std::span<const double> phases)
{
    ComplexVector c(static_cast<Eigen::Index>(phases.size()));
    for (std::size_t n = 0; n < phases.size(); ++n)
        c(static_cast<Eigen::Index>(n)) = std::polar(1.0, phases[n]);
    return RcVector(std::move(c));
}

std::vector<double> RcVector::phases() const
{
    std::vector<double> out(size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = std::arg(coeffs_(static_cast<Eigen::Index>(n)));
    return out;
}

// ---------------------------------------------------------------- realizations

ChannelRealization ChannelRealization::from_links(ComplexMatrix bs_ris, ComplexMatrix ris_user,
                                                  ComplexMatrix bs_user)
{
    if (bs_ris.rows() != ris_user.cols())
        throw Error(ErrorCode::invalid_dimension, "BS-RIS rows must equal RIS element count");
    if (bs_ris.cols() != bs_user.cols())
        throw Error(ErrorCode::invalid_dimension, "BS-RIS columns must equal BS antenna count");
    if (ris_user.rows() != bs_user.rows())
        throw Error(ErrorCode::invalid_dimension, "RIS-user and BS-user user counts differ");
    if (!bs_ris.allFinite() || !ris_user.allFinite() || !bs_user.allFinite())
        throw Error(ErrorCode::numeric_failure, "channel has non-finite entries");

    ChannelRealization ch;
    ch.bs_ris = std::move(bs_ris);
    ch.ris_user = std::move(ris_user);
    ch.bs_user = std::move(bs_user);

    const Eigen::Index m = ch.bs_user.cols();
    const Eigen::Index n = ch.ris_user.cols();
    ch.cascaded.reserve(ch.users());
    for (Eigen::Index k = 0; k < ch.bs_user.rows(); ++k) {
        ComplexMatrix h(m, n + 1);
        h.col(0) = ch.bs_user.row(k).adjoint();
        for (Eigen::Index e = 0; e < n; ++e)
            h.col(e + 1) = (ch.ris_user(k, e) * ch.bs_ris.row(e)).adjoint();
        ch.cascaded.push_back(std::move(h));
    }
    return ch;
}

ChannelRealization sample_channels(const ScenarioConfig& scenario, RngStream& rng)
{
    scenario.validate();
    const ArrayGeometry& g = scenario.geometry;
    const auto k = static_cast<Eigen::Index>(scenario.users());

    const double pl_bi = path_loss(link_distance(g, LinkKind::bs_ris), scenario.bs_ris);
    ComplexMatrix u = draw_link(los_matrix(g, LinkKind::bs_ris), pl_bi,
                                scenario.bs_ris.rician_beta, rng);

    ComplexMatrix v(k, static_cast<Eigen::Index>(g.ris_elements()));
    ComplexMatrix hd(k, static_cast<Eigen::Index>(g.bs_antennas));
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto user = static_cast<std::size_t>(i);
        const LinkParams& iu = scenario.ris_user[user];
        const LinkParams& bu = scenario.bs_user[user];
        v.row(i) = draw_link(los_matrix(g, LinkKind::ris_user, user),
                             path_loss(link_distance(g, LinkKind::ris_user, user), iu),
                             iu.rician_beta, rng);
        hd.row(i) = draw_link(los_matrix(g, LinkKind::bs_user, user),
                              path_loss(link_distance(g, LinkKind::bs_user, user), bu),
                              bu.rician_beta, rng);
    }
    return ChannelRealization::from_links(std::move(u), std::move(v), std::move(hd));
}

ComplexVector superimpose(const ChannelRealization& ch, const RcVector& phi, std::size_t user)
{
    check_user(ch, user);
    check_rc(ch, phi);
    const ComplexMatrix& h = ch.cascaded[user];
    const Eigen::Index n = h.cols() - 1;
    return h.col(0) + h.rightCols(n) * phi.coefficients().conjugate();
}

ComplexMatrix superimpose_all(const ChannelRealization& ch, const RcVector& phi)
{
    check_rc(ch, phi);
    ComplexMatrix out(static_cast<Eigen::Index>(ch.antennas()), static_cast<Eigen::Index>(ch.users()));
    for (std::size_t k = 0; k < ch.users(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = superimpose(ch, phi, k);
    return out;
}

Eigen::RowVectorXcd downlink_gain(const ChannelRealization& ch, const RcVector& phi, std::size_t user)
{
    check_user(ch, user);
    check_rc(ch, phi);
    const auto k = static_cast<Eigen::Index>(user);
    return ch.ris_user.row(k) * phi.coefficients().asDiagonal() * ch.bs_ris + ch.bs_user.row(k);
}

} // namespace ristrain
