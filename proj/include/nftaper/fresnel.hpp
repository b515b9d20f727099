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

#ifndef NFTAPER_FRESNEL_HPP
#define NFTAPER_FRESNEL_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "array.hpp"

namespace nftaper
{

namespace detail
{

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (positive half; rule is symmetric).
struct GK15
{
    static constexpr std::array<double, 8> xk = {
        0.000000000000000000000000000000000e+00,
        2.077849550078984676006894037732449e-01,
        4.058451513773971669066064120769615e-01,
        5.860872354676911302941448382587296e-01,
        7.415311855993944398638647732807884e-01,
        8.648644233597690727897127886409262e-01,
        9.491079123427585245261896840478513e-01,
        9.914553711208126392068546975263285e-01};
    static constexpr std::array<double, 8> wk = {
        2.094821410847278280129991748917143e-01,
        2.044329400752988924141619992346491e-01,
        1.903505780647854099132564024210137e-01,
        1.690047266392679028265834265985503e-01,
        1.406532597155259187451895905102379e-01,
        1.047900103222501838398763225415180e-01,
        6.309209262997855329070066318920429e-02,
        2.293532201052922496373200805896959e-02};
    static constexpr std::array<double, 4> wg = {
        4.179591836734693877551020408163265e-01,
        3.818300505051189449503697754889751e-01,
        2.797053914892766679014677714237796e-01,
        1.294849661688696932706114326790820e-01};
};

// One GK15 panel: returns (kronrod estimate, |kronrod - gauss|).
template <typename F>
inline std::pair<double, double> gk15_panel(F &&f, double a, double b)
{
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    const double fc = f(c);
    double kron = GK15::wk[0] * fc;
    double gauss = GK15::wg[0] * fc;
    for (int i = 1; i < 8; ++i)
    {
        const double dx = h * GK15::xk[i];
        const double fs = f(c - dx) + f(c + dx);
        kron += GK15::wk[i] * fs;
        if (i % 2 == 0)
            gauss += GK15::wg[i / 2] * fs;
    }
    kron *= h;
    gauss *= h;
    return {kron, std::abs(kron - gauss)};
}

// Adaptive GK15 by interval bisection. The integrands here are smooth
// chirps, so the recursion stays shallow.
template <typename F>
inline double gk15_adaptive(F &&f, double a, double b, double tol, int depth = 0)
{
    auto [est, err] = gk15_panel(f, a, b);
    if (err <= tol || depth >= 30)
        return est;
    const double m = 0.5 * (a + b);
    return gk15_adaptive(f, a, m, 0.5 * tol, depth + 1)
         + gk15_adaptive(f, m, b, 0.5 * tol, depth + 1);
}

} // namespace detail

// Fresnel integrals C(g) = int_0^g cos(pi x^2/2) dx, S(g) = int_0^g sin(pi x^2/2) dx.
// Quadrature on subintervals of length <= 0.5 keeps the local oscillation
// below one period per panel at any practical argument.
inline std::pair<double, double> fresnel_cs(double gamma, double tol = 1e-12)
{
    const double sign = gamma < 0.0 ? -1.0 : 1.0; // both integrals are odd
    const double g = std::abs(gamma);
    double C = 0.0, S = 0.0;
    double a = 0.0;
    while (a < g)
    {
        const double b = std::min(a + 0.5, g);
        C += detail::gk15_adaptive([](double x) { return std::cos(M_PI * x * x / 2.0); }, a, b, tol);
        S += detail::gk15_adaptive([](double x) { return std::sin(M_PI * x * x / 2.0); }, a, b, tol);
        a = b;
    }
    return {sign * C, sign * S};
}

// Normalized range-domain gain g(gamma) = (C^2(gamma) + S^2(gamma)) / gamma^2,
// continuously extended to g(0) = 1.
inline double fresnel_range_gain(double gamma)
{
    if (gamma == 0.0)
        return 1.0;
    auto [C, S] = fresnel_cs(gamma);
    return (C * C + S * S) / (gamma * gamma);
}

// Root of fresnel_range_gain(g) = 1/2. The gain is monotone on [1.0, 1.4]
// (0.80 at 1.0, 0.41 at 1.4), so bisection is safe.
inline double alpha_3db()
{
    static const double cached = []() {
        double lo = 1.0, hi = 1.4;
        while (hi - lo > 1e-9)
        {
            const double mid = 0.5 * (lo + hi);
            (fresnel_range_gain(mid) > 0.5 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return cached;
}

// Normalized range coordinate of an observation range r for a beam focused
// at (theta, r_f): gamma = sqrt(N^2 d^2 cos^2(theta)/lambda * |r - r_f| / (2 r r_f)).
inline double gamma_param(const ArrayConfig &cfg, const FocusPoint &focus, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("gamma_param: r must be positive");
    const double Nd = cfg.N * cfg.d;
    const double c = std::cos(focus.theta_u);
    return std::sqrt(Nd * Nd * c * c / cfg.wavelength()
                     * std::abs(r - focus.r_f) / (2.0 * r * focus.r_f));
}

} // namespace nftaper

#endif // NFTAPER_FRESNEL_HPP
