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

// Independent reference computations for the unit tests. Nothing in here
// calls into the library code it is used to check.

#include "ristrain/numerics.hpp"

#include <cstddef>
#include <vector>

namespace oracle {

using ristrain::ComplexMatrix;
using ristrain::ComplexVector;
using ristrain::cplx;

/// DFT matrix built entry by entry with std::polar.
ComplexMatrix dft(std::size_t n);

/// Gaussian elimination with partial pivoting; no Hermitian assumptions.
ComplexMatrix gauss_solve(ComplexMatrix a, ComplexMatrix b);

/// E[max of q uniform-phase cosines] = 1 - int_0^pi (1 - t/pi)^q sin t dt,
/// evaluated with composite Simpson on `panels` panels.
double mean_max_cos_simpson(std::size_t q, std::size_t panels = 20000);

/// SINRs re-expanded term by term: h is M x K (uplink columns), w is M x K.
std::vector<double> sinr_loops(const ComplexMatrix& h, const ComplexMatrix& w, double noise);

/// Downlink gain v^H Phi U + h_d^H summed element by element from the links.
/// `v_row` holds v^H (1 x N), `u` is N x M, `hd_row` holds h_d^H (1 x M).
ComplexMatrix downlink_gain_loops(const ComplexMatrix& v_row, const ComplexVector& phi,
                                  const ComplexMatrix& u, const ComplexMatrix& hd_row);

/// Numerical rank with a relative singular-value threshold.
long numeric_rank(const ComplexMatrix& a, double rel_tol = 1e-9);

/// Mean and standard error of a sample.
struct Moments {
    double mean = 0.0;
    double se = 0.0;
};
Moments moments(const std::vector<double>& x);

/// Paired mean of differences with its standard error.
Moments paired(const std::vector<double>& a, const std::vector<double>& b);

} // namespace oracle
