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

#ifndef NFTAPER_METRICS_HPP
#define NFTAPER_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "array.hpp"
#include "fresnel.hpp"
#include "pattern.hpp"

namespace nftaper
{

// Mainlobe bounds on a cut; both bounds are local-minimum grid points.
struct MainlobeSegment
{
    bool found = false;
    std::size_t peak = 0;
    std::size_t lower = 0; // index of the left bounding minimum
    std::size_t upper = 0; // index of the right bounding minimum
};

// Integrand convention for the integrated sidelobe level. The power pattern
// G is already |.|^2; `power` integrates G itself, `squared` integrates G^2.
enum class IsllIntegrand
{
    power,
    squared
};

inline constexpr double default_prominence_db = 0.5;

// Walks outward from the global peak to the first local minimum on each side
// whose subsequent rebound exceeds `prominence_db`. Minima that never rebound
// by that much before the domain edge do not qualify; if either side has no
// qualifying minimum the segment is undefined.
inline MainlobeSegment segment_mainlobe(const PatternCut &cut,
                                        double prominence_db = default_prominence_db)
{
    const auto &g = cut.gain_linear;
    if (g.empty())
        throw std::invalid_argument("segment_mainlobe: empty cut");
    if (std::abs(*std::max_element(g.begin(), g.end()) - 1.0) > 1e-9)
        throw std::invalid_argument("segment_mainlobe: cut is not peak-normalized");

    const auto &db = cut.gain_db;
    const std::size_t n = g.size();
    const std::size_t p = std::max_element(g.begin(), g.end()) - g.begin();

    auto walk = [&](int dir) -> std::optional<std::size_t> {
        double vmin = db[p];
        std::size_t imin = p;
        std::ptrdiff_t i = std::ptrdiff_t(p);
        while (true)
        {
            i += dir;
            if (i < 0 || i >= std::ptrdiff_t(n))
                return std::nullopt;
            const std::size_t u = std::size_t(i);
            if (db[u] < vmin)
            {
                vmin = db[u];
                imin = u;
            }
            else if (db[u] - vmin > prominence_db)
            {
                return imin;
            }
        }
    };

    MainlobeSegment seg;
    const auto lo = walk(-1);
    const auto hi = walk(+1);
    if (lo && hi)
    {
        seg.found = true;
        seg.peak = p;
        seg.lower = *lo;
        seg.upper = *hi;
    }
    return seg;
}

// Peak sidelobe level in dB relative to the unit mainlobe peak; nullopt when
// the mainlobe is undefined, -inf when the sidelobe region is empty or flat zero.
inline std::optional<double> psll(const PatternCut &cut, const MainlobeSegment &seg)
{
    if (!seg.found)
        return std::nullopt;
    double peak = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < cut.size(); ++i)
    {
        if (i >= seg.lower && i <= seg.upper)
            continue;
        peak = std::max(peak, cut.gain_linear[i]);
        any = true;
    }
    if (!any || peak <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak);
}

namespace detail
{

// Trapezoid over [i0, i1] inclusive; f applied to the gain sample.
template <typename F>
inline double trapezoid(const PatternCut &cut, std::size_t i0, std::size_t i1, F &&f)
{
    double acc = 0.0;
    for (std::size_t i = i0; i + 1 <= i1; ++i)
        acc += 0.5 * (f(cut.gain_linear[i]) + f(cut.gain_linear[i + 1]))
             * (cut.coordinate[i + 1] - cut.coordinate[i]);
    return acc;
}

} // namespace detail

// Integrated sidelobe level: ratio of the sidelobe-region integral to the
// mainlobe-region integral on the cut's own grid. The bounding minima belong
// to both regions (the trapezoid spans the boundary samples).
inline std::optional<double> isll(const PatternCut &cut, const MainlobeSegment &seg,
                                  IsllIntegrand integrand = IsllIntegrand::power)
{
    if (!seg.found)
        return std::nullopt;
    auto f = [integrand](double g) { return integrand == IsllIntegrand::power ? g : g * g; };
    const double main = detail::trapezoid(cut, seg.lower, seg.upper, f);
    const double side = detail::trapezoid(cut, 0, seg.lower, f)
                      + detail::trapezoid(cut, seg.upper, cut.size() - 1, f);
    if (!(main > 0.0))
        return std::nullopt;
    if (!(side > 0.0))
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(side / main);
}

// Distance between the -3 dB crossings bracketing the peak, linear
// interpolation between grid points; +inf if either crossing is not reached.
inline double numeric_3db_width(const PatternCut &cut)
{
    const auto &g = cut.gain_linear;
    const auto &x = cut.coordinate;
    const std::size_t n = g.size();
    const std::size_t p = std::max_element(g.begin(), g.end()) - g.begin();
    const double half = 0.5;

    auto cross = [&](int dir) -> std::optional<double> {
        std::ptrdiff_t i = std::ptrdiff_t(p);
        while (true)
        {
            const std::ptrdiff_t j = i + dir;
            if (j < 0 || j >= std::ptrdiff_t(n))
                return std::nullopt;
            if (g[j] < half)
                return x[i] + (x[j] - x[i]) * (g[i] - half) / (g[i] - g[j]);
            i = j;
        }
    };

    const auto lo = cross(-1);
    const auto hi = cross(+1);
    if (!lo || !hi)
        return std::numeric_limits<double>::infinity();
    return std::abs(*hi - *lo);
}

// Analytic half-power beamwidth 0.886*lambda/(N*d*cos(theta_u)), radians.
inline double hpbw_analytic(const ArrayConfig &cfg, double theta_u)
{
    const double c = std::cos(theta_u);
    if (c < 1e-6)
        throw std::invalid_argument("hpbw_analytic: focus angle too close to endfire");
    return 0.886 * cfg.wavelength() / (cfg.N * cfg.d * c);
}

// Analytic half-power beamdepth bounds about the focus range.
struct BeamdepthBounds
{
    double r_min;  // near -3 dB range
    double r_max;  // far -3 dB range (infinity when the far crossing vanishes)
    bool finite;
};

inline BeamdepthBounds hpbd_bounds(const ArrayConfig &cfg, const FocusPoint &focus)
{
    const double alpha = alpha_3db();
    const double c2 = std::cos(focus.theta_u) * std::cos(focus.theta_u);
    const double Rc = cfg.rayleigh_distance() * c2;
    if (focus.r_f >= Rc / (4.0 * alpha))
        return {focus.r_f * Rc / (Rc + 4.0 * alpha * focus.r_f),
                std::numeric_limits<double>::infinity(), false};
    return {focus.r_f * Rc / (Rc + 4.0 * alpha * focus.r_f),
            focus.r_f * Rc / (Rc - 4.0 * alpha * focus.r_f), true};
}

// Analytic beamdepth r_max - r_min, +inf past the collapse range.
inline double hpbd_analytic(const ArrayConfig &cfg, const FocusPoint &focus)
{
    const auto b = hpbd_bounds(cfg, focus);
    if (!b.finite)
        return std::numeric_limits<double>::infinity();
    return b.r_max - b.r_min;
}

// Full per-cut report used by the experiment runner.
struct SidelobeReport
{
    std::optional<double> psll_db;
    std::optional<double> isll_db;
    std::optional<double> width; // rad (angle) or m (range); infinity encodes no crossing
    MainlobeSegment mainlobe;
};

inline SidelobeReport analyze_cut(const PatternCut &cut,
                                  IsllIntegrand integrand = IsllIntegrand::power,
                                  double prominence_db = default_prominence_db)
{
    SidelobeReport rep;
    rep.mainlobe = segment_mainlobe(cut, prominence_db);
    rep.psll_db = psll(cut, rep.mainlobe);
    rep.isll_db = isll(cut, rep.mainlobe, integrand);
    rep.width = numeric_3db_width(cut);
    return rep;
}

} // namespace nftaper

#endif // NFTAPER_METRICS_HPP
