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

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace ristrain {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

/// Positions of the BS array, the RIS and the users. The BS is a ULA along
/// the x-axis, the RIS a URA in the x-z plane; element spacing is given in
/// wavelengths and all positions in meters.
struct ArrayGeometry {
    std::size_t bs_antennas = 1;
    Vec3 bs_center{0.0, 0.0, 0.0};
    Vec3 ris_center{0.0, 50.0, 0.0};
    std::size_t ris_nx = 10;
    std::size_t ris_nz = 1;
    double element_spacing = 0.5;
    std::vector<Vec3> user_positions;

    std::size_t ris_elements() const noexcept { return ris_nx * ris_nz; }
    std::size_t users() const noexcept { return user_positions.size(); }

    /// Lays out n RIS elements. Multiples of ten use ten columns along x and
    /// n/10 rows along z; any other count becomes a single row of n elements.
    void set_ris_elements(std::size_t n);

    /// BS element m offset from bs_center, in wavelengths.
    Vec3 bs_element_offset(std::size_t m) const;
    /// RIS element n offset from ris_center, in wavelengths. Indexing is
    /// row-major over (x, z): n = ix * ris_nz + iz.
    Vec3 ris_element_offset(std::size_t n) const;

    void validate() const;
};

struct LinkParams {
    double c0 = 1e-2;        // linear gain at the 1 m reference distance
    double exponent = 2.0;   // path-loss exponent
    double rician_beta = std::numeric_limits<double>::infinity();   // linear K-factor

    void validate() const;
};

enum class LinkKind { bs_ris, ris_user, bs_user };

struct ScenarioConfig {
    ArrayGeometry geometry;
    LinkParams bs_ris{1e-2, 2.0, std::numeric_limits<double>::infinity()};
    std::vector<LinkParams> ris_user;   // one per user
    std::vector<LinkParams> bs_user;    // one per user
    double noise_bs_mw = 1e-7;          // sigma_z^2
    double noise_user_mw = 1e-7;        // sigma_n^2
    double pilot_power_mw = 1.0;        // alpha
    std::vector<double> sinr_targets;   // gamma_k, linear
    double transmit_power_mw = 1.0;     // P for fixed-power (received power) evaluations
    std::size_t coherence_symbols = 1000;

    std::size_t users() const noexcept { return geometry.users(); }
    std::size_t ris_elements() const noexcept { return geometry.ris_elements(); }
    std::size_t bs_antennas() const noexcept { return geometry.bs_antennas; }

    void validate() const;
};

/// c0 * d^-exponent. Only defined beyond the 1 m reference distance.
double path_loss(double distance_m, const LinkParams& params);

/// Center-to-center distance of a link; `user` is ignored for bs_ris.
double link_distance(const ArrayGeometry& geometry, LinkKind link, std::size_t user = 0);

/// Unit-modulus far-field LoS component of a link (receive steering vector
/// times transmit steering vector hermitian), normalised so that entry (0, 0)
/// is exactly 1. Shapes follow the downlink channels: bs_ris is N x M,
/// ris_user is 1 x N, bs_user is 1 x M.
ComplexMatrix los_matrix(const ArrayGeometry& geometry, LinkKind link, std::size_t user = 0);

/// RIS reflection coefficients, one unit-modulus value per element.
class RcVector {
public:
    RcVector() = default;
    /// Throws Error(invalid_rc) if any |phi_n| deviates from 1 by more than 1e-12.
    explicit RcVector(ComplexVector coefficients);

    static RcVector ones(std::size_t n);
    static RcVector from_phases(std::span<const double> phases);

    std::size_t size() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
    cplx operator[](std::size_t n) const { return coeffs_(static_cast<Eigen::Index>(n)); }
    const ComplexVector& coefficients() const noexcept { return coeffs_; }
    std::vector<double> phases() const;

    static constexpr double modulus_tolerance = 1e-12;

private:
    ComplexVector coeffs_;
};

/// One draw of all links plus the per-user cascaded stacks.
struct ChannelRealization {
    ComplexMatrix bs_ris;     // U, N x M
    ComplexMatrix ris_user;   // K x N, row k is v_k^H
    ComplexMatrix bs_user;    // K x M, row k is h_{d,k}^H
    /// Per user, the M x (N+1) uplink stack H_k = [h_{d,k}, h_{r,k,1}, ..., h_{r,k,N}]
    /// with h_{r,k,n} = (v_{k,n}^H U_{n,:})^H.
    std::vector<ComplexMatrix> cascaded;

    std::size_t users() const noexcept { return static_cast<std::size_t>(bs_user.rows()); }
    std::size_t antennas() const noexcept { return static_cast<std::size_t>(bs_user.cols()); }
    std::size_t elements() const noexcept { return static_cast<std::size_t>(ris_user.cols()); }

    /// Builds a realization (and its cascaded stacks) from the three link matrices.
    static ChannelRealization from_links(ComplexMatrix bs_ris, ComplexMatrix ris_user,
                                         ComplexMatrix bs_user);
};

/// Draws every link from the Rician model of the scenario.
ChannelRealization sample_channels(const ScenarioConfig& scenario, RngStream& rng);

/// Uplink superimposed channel of user k under RC vector phi:
/// h_{d,k} + sum_n conj(phi_n) h_{r,k,n} = H_k [1, phi^H]^T.
ComplexVector superimpose(const ChannelRealization& ch, const RcVector& phi, std::size_t user);

/// All users' superimposed channels as the columns of an M x K matrix.
ComplexMatrix superimpose_all(const ChannelRealization& ch, const RcVector& phi);

/// Downlink row gain v_k^H Phi U + h_{d,k}^H (1 x M).
Eigen::RowVectorXcd downlink_gain(const ChannelRealization& ch, const RcVector& phi, std::size_t user);

} // namespace ristrain
