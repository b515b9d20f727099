// SPDX-License-Identifier: Apache-2.0
//
// nftaper - near-field amplitude tapers and sidelobe metrics for uniform linear arrays
// Copyright (C) 2026 nftaper contributors
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

#ifndef NFTAPER_WINDOWS_HPP
#define NFTAPER_WINDOWS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "array.hpp"

namespace nftaper
{

// Real nonnegative amplitude weights. Generators return the natural
// definition-form weights; metrics are scale-invariant and exports apply
// peak_one() explicitly.
struct Taper
{
    VecXd w;
    std::string kind;

    Taper() = default;
    Taper(VecXd weights, std::string k) : w(std::move(weights)), kind(std::move(k))
    {
        if (w.size() < 2)
            throw std::invalid_argument("Taper: need at least 2 weights");
        if ((w.array() < 0.0).any())
            throw std::invalid_argument("Taper: weights must be nonnegative");
    }

    Taper peak_one() const
    {
        const double peak = w.maxCoeff();
        if (!(peak > 0.0))
            throw std::invalid_argument("Taper: zero taper cannot be normalized");
        return Taper(w / peak, kind);
    }
};

inline Taper uniform_window(int N)
{
    if (N < 2)
        throw std::invalid_argument("uniform_window: N must be >= 2");
    return Taper(VecXd::Ones(N), "uniform");
}

// Symmetric Hamming window, w_k = 0.54 - 0.46*cos(2*pi*k/(N-1)).
inline Taper hamming_window(int N)
{
    if (N < 2)
        throw std::invalid_argument("hamming_window: N must be >= 2");
    VecXd w(N);
    for (int k = 0; k < N; ++k)
        w(k) = 0.54 - 0.46 * std::cos(2.0 * M_PI * k / (N - 1));
    return Taper(w, "hamming");
}

// Near-field transform of a prototype window defined on [0,1]: with the
// centered normalized coordinate x_k = 2k/(N-1) - 1, the transformed taper is
// |x_k| * prototype(x_k^2), peak-one normalized. The |x| factor is the
// Jacobian of u = x^2, which maps the quadratic axial phase to a linear one.
inline Taper nf_transform(const std::function<double(double)> &prototype, int N,
                          const std::string &name = "nf-transform")
{
    if (N < 2)
        throw std::invalid_argument("nf_transform: N must be >= 2");
    VecXd w(N);
    for (int k = 0; k < N; ++k)
    {
        const double x = 2.0 * k / (N - 1) - 1.0;
        const double p = prototype(x * x);
        if (p < 0.0)
            throw std::invalid_argument("nf_transform: prototype must be nonnegative on [0,1]");
        w(k) = std::abs(x) * p;
    }
    return Taper(w / w.maxCoeff(), name);
}

inline double hamming_prototype(double t)
{
    return 0.54 - 0.46 * std::cos(2.0 * M_PI * t);
}

inline Taper nf_hamming_window(int N)
{
    return nf_transform(hamming_prototype, N, "nf-hamming");
}

// Classical Slepian (DPSS) window: dominant eigenvector of the symmetric
// kernel K_{n,m} = (2W/fs) * sinc((2W/fs)(n-m)), sinc(t) = sin(pi t)/(pi t).
struct ClassicSlepian
{
    Taper taper;
    double lambda; // concentration, in (0,1)
};

inline Eigen::MatrixXd slepian_kernel(int N, double w_ratio)
{
    if (N < 2)
        throw std::invalid_argument("classic_slepian: N must be >= 2");
    if (!(w_ratio > 0.0 && w_ratio < 0.5))
        throw std::invalid_argument("classic_slepian: W/fs must be in (0, 1/2)");

    const double tw = 2.0 * w_ratio;
    Eigen::MatrixXd K(N, N);
    for (int n = 0; n < N; ++n)
        for (int m = 0; m <= n; ++m)
        {
            const double t = tw * (n - m);
            const double s = n == m ? 1.0 : std::sin(M_PI * t) / (M_PI * t);
            K(n, m) = K(m, n) = tw * s;
        }
    return K;
}

inline ClassicSlepian classic_slepian(int N, double w_ratio)
{
    const Eigen::MatrixXd K = slepian_kernel(N, w_ratio);

    // the kernel's leading eigenvalues cluster within ~1e-8 of each other, so
    // a direct eigensolve of K mixes the top eigenvectors; the commuting
    // symmetric tridiagonal has the same eigenvectors with a simple spectrum
    Eigen::VectorXd diag(N), sub(N - 1);
    const double c = std::cos(2.0 * M_PI * w_ratio);
    for (int k = 0; k < N; ++k)
    {
        const double h = 0.5 * (N - 1 - 2 * k);
        diag(k) = h * h * c;
    }
    for (int k = 0; k + 1 < N; ++k)
        sub(k) = 0.5 * (k + 1) * (N - 1 - k);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("classic_slepian: eigensolver failed");

    // largest tridiagonal eigenvalue <-> most concentrated window
    VecXd v = es.eigenvectors().col(N - 1); // Eigen sorts ascending
    if (v(N / 2) < 0.0)
        v = -v;
    if ((v.array() < 0.0).any())
        throw std::runtime_error("classic_slepian: dominant eigenvector not positive");

    // v is unit norm, so the concentration is the kernel Rayleigh quotient
    const double lambda = v.dot(K * v);
    return {Taper(v, "classic-slepian"), lambda};
}

} // namespace nftaper

#endif // NFTAPER_WINDOWS_HPP
