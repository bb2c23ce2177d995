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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

namespace ristrain {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// n-point DFT matrix, entry (a, b) = exp(-i 2 pi a b / n) with 0-based indices.
/// Satisfies F * F^H = n * I.
ComplexMatrix dft_matrix(std::size_t n);

/// Solves A X = B for Hermitian positive definite A.
///
/// A is checked for Hermitian symmetry (||A - A^H|| <= 1e-9 ||A||) before the
/// Cholesky factorisation; both an asymmetric and an indefinite A raise
/// ErrorCode::numeric_failure.
ComplexMatrix solve_hermitian_pd(const ComplexMatrix& a, const ComplexMatrix& b);

/// Purposes a trial draws randomness for. Each purpose gets its own stream so
/// that adding draws for one purpose never shifts another.
enum class StreamPurpose : std::uint64_t {
    channel = 1,
    estimation = 2,
    schedule = 3,
    training = 4,
    restarts = 5,
    errors = 6,
    oracle = 7,
};

/// Counter-style stream identifier derived from (trial index, purpose). Pure
/// function of its inputs, so trials can run in any order on any thread.
std::uint64_t derive_stream_id(std::uint64_t trial_index, StreamPurpose purpose) noexcept;
std::uint64_t derive_stream_id(std::uint64_t sweep_index, std::uint64_t trial_index,
                               StreamPurpose purpose) noexcept;

/// Reproducible random stream. Identical (master_seed, stream_id) pairs produce
/// identical sample sequences. Single consumer: do not share across threads.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    double normal();
    double uniform();               // [0, 1)
    double uniform_phase();         // [0, 2 pi)
    cplx unit_phasor();             // exp(i * uniform_phase())

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// i.i.d. circularly-symmetric complex Gaussian matrix with E|x|^2 = variance.
ComplexMatrix sample_cgauss(RngStream& rng, std::size_t rows, std::size_t cols, double variance);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace ristrain
