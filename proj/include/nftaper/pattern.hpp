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

#ifndef NFTAPER_PATTERN_HPP
#define NFTAPER_PATTERN_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "array.hpp"

namespace nftaper
{

enum class CutDomain
{
    angle, // coordinate in radians
    range  // coordinate in meters
};

enum class AngleCutMode
{
    fixed_range,  // evaluate along theta at constant r = r_f
    distance_ring // evaluate along the ring r(theta) = r_f cos^2(theta)/cos^2(theta_u)
};

// A 1-D slice of the power pattern, normalized to unit peak.
struct PatternCut
{
    CutDomain domain;
    std::vector<double> coordinate;
    std::vector<double> gain_linear; // peak-normalized power
    std::vector<double> gain_db;     // 10*log10(gain_linear)

    std::size_t size() const { return coordinate.size(); }
};

// Midpoint angle grid on (-pi/2, pi/2): M cells, samples at cell centers.
// The open interval keeps cos(theta) > 0 for the ring-mode range map.
inline std::vector<double> angle_grid(int M = 8192)
{
    if (M < 2)
        throw std::invalid_argument("angle_grid: need at least 2 samples");
    std::vector<double> th(M);
    const double step = M_PI / M;
    for (int i = 0; i < M; ++i)
        th[i] = -M_PI / 2.0 + (i + 0.5) * step;
    return th;
}

// Log-spaced range grid, inclusive endpoints, r in [max(lambda, r_f/20), R_D].
inline std::vector<double> range_grid(const ArrayConfig &cfg, const FocusPoint &focus, int M = 65536)
{
    if (M < 2)
        throw std::invalid_argument("range_grid: need at least 2 samples");
    const double lo = std::max(cfg.wavelength(), focus.r_f / 20.0);
    const double hi = cfg.rayleigh_distance();
    if (!(lo < hi))
        throw std::invalid_argument("range_grid: empty range interval");
    std::vector<double> r(M);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < M; ++i)
        r[i] = std::exp(llo + (lhi - llo) * i / double(M - 1));
    r.front() = lo;
    r.back() = hi;
    return r;
}

// Power gain |(w . b(theta_u, r_f))^H b(theta, r)|^2 of taper w focused at
// `focus`, evaluated at a single observation point.
inline double beam_gain(const ArrayConfig &cfg, const VecXd &w, const FocusPoint &focus,
                        double theta, double r, SteeringModel model = SteeringModel::fresnel)
{
    const VecXcd bf = steer(cfg, model, focus.theta_u, focus.r_f);
    const VecXcd b = steer(cfg, model, theta, r);
    const cxd acc = (w.cast<cxd>().cwiseProduct(bf)).dot(b); // dot() conjugates the left side
    return std::norm(acc);
}

namespace detail
{

// Evaluates sum_n g_n^* exp(j*phi(n)) for phase phi(n) = p0 + p1*n + p2*n^2
// over the element indices, via the second-order phase recurrence
// (two complex multiplies per element). n may start at a half-integer.
inline cxd quadratic_phase_sum(const VecXcd &gconj, double n0, double p0, double p1, double p2)
{
    const int N = int(gconj.size());
    // phi(n0 + k) = [p0 + p1*n0 + p2*n0^2] + k*[p1 + p2*(2*n0 + 1)] + k(k-1)*p2  (k integer)
    cxd u = std::polar(1.0, p0 + p1 * n0 + p2 * n0 * n0);
    cxd step = std::polar(1.0, p1 + p2 * (2.0 * n0 + 1.0));
    const cxd curv = std::polar(1.0, 2.0 * p2);
    cxd acc = gconj(0) * u;
    for (int k = 1; k < N; ++k)
    {
        u *= step;
        step *= curv;
        acc += gconj(k) * u;
    }
    return acc;
}

} // namespace detail

// Per-point phase coefficients for the quadratic-in-n steering phases.
// fresnel:  phi(n) = -nu*(n*d*sin(theta) - n^2*d^2*cos^2(theta)/(2r))
// omega:    phi(n) = -2*pi*(Omega*n - n^2*d^2/(2*r*lambda) + Omega^2*n^2*lambda/(2r))
struct QuadraticPhase
{
    double p1, p2; // constant term is irrelevant to |.|

    static QuadraticPhase fresnel(const ArrayConfig &cfg, double theta, double r)
    {
        const double nu = cfg.wavenumber();
        const double c2 = std::cos(theta) * std::cos(theta);
        return {-nu * cfg.d * std::sin(theta), nu * cfg.d * cfg.d * c2 / (2.0 * r)};
    }

    static QuadraticPhase omega(const ArrayConfig &cfg, double Om, double r)
    {
        const double lam = cfg.wavelength();
        return {-2.0 * M_PI * Om,
                2.0 * M_PI * (cfg.d * cfg.d / (2.0 * r * lam) - Om * Om * lam / (2.0 * r))};
    }
};

namespace detail
{

// Power pattern of the focused weights g = w . b_focus over a list of
// observation points; fast path for the quadratic-phase models.
inline std::vector<double> gain_series(const ArrayConfig &cfg, const VecXcd &g,
                                       const std::vector<double> &thetas,
                                       const std::vector<double> &ranges, SteeringModel model)
{
    const std::size_t M = thetas.size();
    std::vector<double> out(M);
    const VecXcd gc = g.conjugate();
    const double n0 = cfg.index(0);
    const double nu = cfg.wavenumber();
    const double a = 1.0 / std::sqrt(double(cfg.N));

    if (model == SteeringModel::fresnel || model == SteeringModel::omega)
    {
        for (std::size_t i = 0; i < M; ++i)
        {
            const QuadraticPhase q =
                model == SteeringModel::fresnel
                    ? QuadraticPhase::fresnel(cfg, thetas[i], ranges[i])
                    : QuadraticPhase::omega(cfg, omega_from_theta(cfg, thetas[i]), ranges[i]);
            out[i] = std::norm(quadratic_phase_sum(gc, n0, 0.0, q.p1, q.p2)) / double(cfg.N);
        }
        return out;
    }

    for (std::size_t i = 0; i < M; ++i) // exact / far-field: direct evaluation
    {
        const double s = std::sin(thetas[i]);
        const double r = ranges[i];
        cxd acc = 0.0;
        for (int k = 0; k < cfg.N; ++k)
        {
            const double nd = cfg.index(k) * cfg.d;
            double ph;
            if (model == SteeringModel::exact)
            {
                const double dist = std::sqrt(r * r + nd * nd - 2.0 * r * nd * s);
                ph = nu * (dist - r);
            }
            else
            {
                ph = -nu * nd * s;
            }
            acc += gc(k) * std::polar(a, ph);
        }
        out[i] = std::norm(acc);
    }
    return out;
}

inline PatternCut finalize_cut(CutDomain domain, std::vector<double> coord, std::vector<double> gain)
{
    const double peak = *std::max_element(gain.begin(), gain.end());
    if (!(peak > 0.0))
        throw std::runtime_error("pattern cut: all-zero gain");
    PatternCut cut;
    cut.domain = domain;
    cut.coordinate = std::move(coord);
    cut.gain_linear = std::move(gain);
    cut.gain_db.resize(cut.gain_linear.size());
    for (std::size_t i = 0; i < cut.gain_linear.size(); ++i)
    {
        cut.gain_linear[i] /= peak;
        cut.gain_db[i] = 10.0 * std::log10(std::max(cut.gain_linear[i], 1e-300));
    }
    return cut;
}

} // namespace detail

// Lateral cut through the focus: theta sweeps the grid; r is either the
// focus range (fixed_range) or the distance ring r_f cos^2(theta)/cos^2(theta_u).
inline PatternCut angle_cut(const ArrayConfig &cfg, const VecXd &w, const FocusPoint &focus,
                            const std::vector<double> &thetas,
                            SteeringModel model = SteeringModel::fresnel,
                            AngleCutMode mode = AngleCutMode::fixed_range)
{
    if (thetas.empty())
        throw std::invalid_argument("angle cut: empty evaluation grid");
    const VecXcd g = w.cast<cxd>().cwiseProduct(steer(cfg, model, focus.theta_u, focus.r_f));
    std::vector<double> ranges(thetas.size());
    const double cu2 = std::cos(focus.theta_u) * std::cos(focus.theta_u);
    for (std::size_t i = 0; i < thetas.size(); ++i)
    {
        const double c = std::cos(thetas[i]);
        ranges[i] = mode == AngleCutMode::fixed_range ? focus.r_f : focus.r_f * c * c / cu2;
    }
    auto gain = detail::gain_series(cfg, g, thetas, ranges, model);
    return detail::finalize_cut(CutDomain::angle, thetas, std::move(gain));
}

// Axial cut through the focus: r sweeps the grid at theta = theta_u.
inline PatternCut range_cut(const ArrayConfig &cfg, const VecXd &w, const FocusPoint &focus,
                            const std::vector<double> &ranges,
                            SteeringModel model = SteeringModel::fresnel)
{
    if (ranges.empty())
        throw std::invalid_argument("range cut: empty evaluation grid");
    for (double r : ranges)
        if (!(r > 0.0))
            throw std::invalid_argument("range cut: ranges must be positive");
    const VecXcd g = w.cast<cxd>().cwiseProduct(steer(cfg, model, focus.theta_u, focus.r_f));
    std::vector<double> thetas(ranges.size(), focus.theta_u);
    auto gain = detail::gain_series(cfg, g, thetas, ranges, model);
    return detail::finalize_cut(CutDomain::range, ranges, std::move(gain));
}

} // namespace nftaper

#endif // NFTAPER_PATTERN_HPP
