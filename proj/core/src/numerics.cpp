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

#include "ristrain/numerics.hpp"
#include "ristrain/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ristrain {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

ComplexMatrix dft_matrix(std::size_t n)
{
    if (n == 0)
        throw Error(ErrorCode::invalid_dimension, "DFT size must be at least 1");

    ComplexMatrix f(n, n);
    const double base = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // reduce a*b mod n first so large n keeps full phase precision
            const auto k = static_cast<double>((a * b) % n);
            f(a, b) = std::polar(1.0, base * k);
        }
    return f;
}

ComplexMatrix solve_hermitian_pd(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != a.cols())
        throw Error(ErrorCode::invalid_dimension, "matrix must be square");
    if (a.rows() != b.rows())
        throw Error(ErrorCode::invalid_dimension, "right-hand side row count mismatch");
    if (a.rows() == 0)
        return ComplexMatrix(0, b.cols());

    const double norm = a.norm();
    if (!std::isfinite(norm))
        throw Error(ErrorCode::numeric_failure, "matrix has non-finite entries");
    if ((a - a.adjoint()).norm() > 1e-9 * norm)
        throw Error(ErrorCode::numeric_failure, "matrix is not Hermitian");

    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorCode::numeric_failure, "matrix is not positive definite");
    return llt.solve(b);
}

std::uint64_t derive_stream_id(std::uint64_t trial_index, StreamPurpose purpose) noexcept
{
    return splitmix64(splitmix64(trial_index) ^ static_cast<std::uint64_t>(purpose));
}

std::uint64_t derive_stream_id(std::uint64_t sweep_index, std::uint64_t trial_index,
                               StreamPurpose purpose) noexcept
{
    return splitmix64(splitmix64(sweep_index) + derive_stream_id(trial_index, purpose));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id)
{
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

double RngStream::uniform_phase() { return 2.0 * std::numbers::pi * uniform_(engine_); }

cplx RngStream::unit_phasor() { return std::polar(1.0, uniform_phase()); }

ComplexMatrix sample_cgauss(RngStream& rng, std::size_t rows, std::size_t cols, double variance)
{
    if (!(variance >= 0.0))
        throw Error(ErrorCode::invalid_argument,
                    "variance must be non-negative, got " + std::to_string(variance));

    ComplexMatrix out(rows, cols);
    if (variance == 0.0) {
        out.setZero();
        return out;
    }
    const double scale = std::sqrt(variance / 2.0);
    // column-major fill keeps the draw order independent of Eigen internals
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) {
            const double re = rng.normal();
            const double im = rng.normal();
            out(r, c) = cplx(scale * re, scale * im);
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace ristrain
