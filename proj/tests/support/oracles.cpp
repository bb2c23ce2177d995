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

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace oracle {

ComplexMatrix dft(std::size_t n)
{
    const auto sz = static_cast<Eigen::Index>(n);
    ComplexMatrix f(sz, sz);
    for (Eigen::Index a = 0; a < sz; ++a)
        for (Eigen::Index b = 0; b < sz; ++b) {
            // Reduce a*b mod n first so large products keep full phase accuracy.
            const auto ab = static_cast<double>((a * b) % sz);
            f(a, b) = std::polar(1.0, -2.0 * std::numbers::pi * ab / static_cast<double>(n));
        }
    return f;
}

ComplexMatrix gauss_solve(ComplexMatrix a, ComplexMatrix b)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n)
        throw std::invalid_argument("gauss_solve: shape mismatch");
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c)))
                piv = r;
        if (std::abs(a(piv, c)) == 0.0)
            throw std::runtime_error("gauss_solve: singular");
        a.row(c).swap(a.row(piv));
        b.row(c).swap(b.row(piv));
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const cplx f = a(r, c) / a(c, c);
            for (Eigen::Index j = c; j < n; ++j)
                a(r, j) -= f * a(c, j);
            for (Eigen::Index j = 0; j < b.cols(); ++j)
                b(r, j) -= f * b(c, j);
        }
    }
    ComplexMatrix x(n, b.cols());
    for (Eigen::Index r = n - 1; r >= 0; --r)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            cplx s = b(r, j);
            for (Eigen::Index k = r + 1; k < n; ++k)
                s -= a(r, k) * x(k, j);
            x(r, j) = s / a(r, r);
        }
    return x;
}

double mean_max_cos_simpson(std::size_t q, std::size_t panels)
{
    if (panels % 2 != 0)
        ++panels;
    const double pi = std::numbers::pi;
    const double h = pi / static_cast<double>(panels);
    auto f = [&](double t) { return std::pow(1.0 - t / pi, static_cast<double>(q)) * std::sin(t); };
    double s = f(0.0) + f(pi);
    for (std::size_t i = 1; i < panels; ++i)
        s += (i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
    return 1.0 - s * h / 3.0;
}

std::vector<double> sinr_loops(const ComplexMatrix& h, const ComplexMatrix& w, double noise)
{
    std::vector<double> out;
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
        double signal = 0.0;
        double interference = 0.0;
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            cplx g = 0.0;
            for (Eigen::Index m = 0; m < h.rows(); ++m)
                g += std::conj(h(m, k)) * w(m, j);
            (j == k ? signal : interference) += std::norm(g);
        }
        out.push_back(signal / (interference + noise));
    }
    return out;
}

ComplexMatrix downlink_gain_loops(const ComplexMatrix& v_row, const ComplexVector& phi,
                                  const ComplexMatrix& u, const ComplexMatrix& hd_row)
{
    ComplexMatrix g = hd_row;
    for (Eigen::Index m = 0; m < u.cols(); ++m)
        for (Eigen::Index n = 0; n < u.rows(); ++n)
            g(0, m) += v_row(0, n) * phi(n) * u(n, m);
    return g;
}

long numeric_rank(const ComplexMatrix& a, double rel_tol)
{
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    long r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0))
            ++r;
    return r;
}

Moments moments(const std::vector<double>& x)
{
    const auto n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : x)
        var += (v - mean) * (v - mean);
    var /= (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

Moments paired(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        d[i] = a[i] - b[i];
    return moments(d);
}

} // namespace oracle
