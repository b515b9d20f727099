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

#ifndef NFTAPER_SLEPIAN_HPP
#define NFTAPER_SLEPIAN_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "array.hpp"
#include "metrics.hpp"
#include "windows.hpp"

namespace nftaper
{

// Lower bound of the total (denominator) region. The literal inner Fresnel
// boundary can sit above the mainlobe interval at close-in focus ranges,
// which breaks the subset semantics of the concentration ratio; the subset
// adjustment lowers it to keep the numerator region contained.
enum class RegionPolicy
{
    subset_adjusted,
    strict_paper
};

struct MainlobeRegion
{
    double omega_min, omega_max; // dimensionless spatial frequency
    double r_lo, r_hi;           // meters
    bool clamped_lo = false;     // r_lo hit the lambda floor
    bool clamped_hi = false;     // r_hi hit the Rayleigh distance
};

struct TotalRegion
{
    double omega_min, omega_max;
    double r_lo, r_hi;
};

// Numerator region: the analytic 3 dB mainlobe box scaled by (k_angle,
// k_range). Angle bounds are symmetric about Omega_u; range bounds scale
// per side about r_f and clamp to [lambda, R_D].
inline MainlobeRegion mainlobe_region(const ArrayConfig &cfg, const FocusPoint &focus,
                                      double k_angle, double k_range)
{
    if (k_angle < 1.0 || k_range < 1.0)
        throw std::invalid_argument("mainlobe_region: scale factors must be >= 1");
    const auto bd = hpbd_bounds(cfg, focus);
    if (!bd.finite)
        throw std::invalid_argument(
            "mainlobe_region: analytic beamdepth is infinite at this focus; "
            "supply an explicit range interval instead");

    const double dth = hpbw_analytic(cfg, focus.theta_u);
    const double ou = omega_from_theta(cfg, focus.theta_u);
    const double half = cfg.d / cfg.wavelength() * std::sin(k_angle * dth / 2.0);

    MainlobeRegion reg;
    reg.omega_min = ou - half;
    reg.omega_max = ou + half;
    const double lo = focus.r_f - k_range * (focus.r_f - bd.r_min);
    const double hi = focus.r_f + k_range * (bd.r_max - focus.r_f);
    reg.clamped_lo = lo < cfg.wavelength();
    reg.clamped_hi = hi > cfg.rayleigh_distance();
    reg.r_lo = reg.clamped_lo ? cfg.wavelength() : lo;
    reg.r_hi = reg.clamped_hi ? cfg.rayleigh_distance() : hi;
    return reg;
}

inline TotalRegion total_region(const ArrayConfig &cfg, const MainlobeRegion &mainlobe,
                                RegionPolicy policy = RegionPolicy::subset_adjusted)
{
    const double om = cfg.d / cfg.wavelength();
    const double inner = cfg.fresnel_inner();
    TotalRegion reg;
    reg.omega_min = -om;
    reg.omega_max = om;
    reg.r_lo = policy == RegionPolicy::subset_adjusted ? std::min(inner, mainlobe.r_lo) : inner;
    reg.r_hi = cfg.rayleigh_distance();
    return reg;
}

enum class RangeSpacing
{
    linear,
    logarithmic
};

struct GridSpec
{
    int n_omega;
    int n_r;
    RangeSpacing r_spacing;

    GridSpec(int nw, int nr, RangeSpacing sp) : n_omega(nw), n_r(nr), r_spacing(sp)
    {
        if (n_omega < 2 || n_r < 2)
            throw std::invalid_argument("GridSpec: grid too coarse, need >= 2 samples per dimension");
    }

    static GridSpec default_mainlobe() { return GridSpec(512, 512, RangeSpacing::linear); }
    static GridSpec default_total() { return GridSpec(1024, 2048, RangeSpacing::logarithmic); }

    GridSpec doubled() const { return GridSpec(2 * n_omega, 2 * n_r, r_spacing); }
};

namespace detail
{

// Range samples and integration weights: cell midpoints with exact cell
// widths, cells linear or logarithmic in r.
inline void range_cells(double r_lo, double r_hi, int n, RangeSpacing spacing,
                        std::vector<double> &mid, std::vector<double> &width)
{
    mid.resize(n);
    width.resize(n);
    if (spacing == RangeSpacing::linear)
    {
        const double dr = (r_hi - r_lo) / n;
        for (int j = 0; j < n; ++j)
        {
            mid[j] = r_lo + (j + 0.5) * dr;
            width[j] = dr;
        }
        return;
    }
    const double llo = std::log(r_lo), lhi = std::log(r_hi);
    double prev = r_lo;
    for (int j = 0; j < n; ++j)
    {
        const double next = std::exp(llo + (lhi - llo) * (j + 1) / double(n));
        mid[j] = 0.5 * (prev + next);
        width[j] = next - prev;
        prev = next;
    }
}

// Fills one steering column in the Omega model for fixed (Omega, r) via the
// second-order phase recurrence; phase quadratic in the element index.
inline void fill_omega_column(const ArrayConfig &cfg, double Om, double r,
                              Eigen::Ref<VecXcd> col)
{
    const double lam = cfg.wavelength();
    const double p1 = -2.0 * M_PI * Om;
    const double p2 = 2.0 * M_PI * (cfg.d * cfg.d / (2.0 * r * lam) - Om * Om * lam / (2.0 * r));
    const double n0 = cfg.index(0);
    const double a = 1.0 / std::sqrt(double(cfg.N));

    cxd u = std::polar(a, p1 * n0 + p2 * n0 * n0);
    cxd step = std::polar(1.0, p1 + p2 * (2.0 * n0 + 1.0));
    const cxd curv = std::polar(1.0, 2.0 * p2);
    col(0) = u;
    for (int k = 1; k < cfg.N; ++k)
    {
        u *= step;
        step *= curv;
        col(k) = u;
    }
}

// Midpoint Riemann sum of the steering-vector Gram over a rectangular
// (Omega, r) region: sum_{i,j} b(O_i, r_j) b^H(O_i, r_j) * dO * dr_j.
// One rank-K update per range sample keeps the accumulation order fixed.
inline MatXcd assemble_gram(const ArrayConfig &cfg, double o_lo, double o_hi, double r_lo,
                            double r_hi, const GridSpec &grid)
{
    if (!(o_lo < o_hi) || !(0.0 < r_lo) || !(r_lo < r_hi))
        throw std::invalid_argument("assemble_gram: degenerate region");

    const int N = cfg.N;
    const double dO = (o_hi - o_lo) / grid.n_omega;
    std::vector<double> rmid, rw;
    range_cells(r_lo, r_hi, grid.n_r, grid.r_spacing, rmid, rw);

    MatXcd A = MatXcd::Zero(N, N);
    MatXcd M(N, grid.n_omega);
    for (int j = 0; j < grid.n_r; ++j)
    {
        for (int i = 0; i < grid.n_omega; ++i)
        {
            const double Om = o_lo + (i + 0.5) * dO;
            fill_omega_column(cfg, Om, rmid[j], M.col(i));
        }
        A.selfadjointView<Eigen::Lower>().rankUpdate(M, dO * rw[j]);
    }

    // exact Hermitian symmetrization from the accumulated lower triangle
    A = A.selfadjointView<Eigen::Lower>();
    for (int n = 0; n < N; ++n)
        A(n, n) = cxd(A(n, n).real(), 0.0);
    return A;
}

} // namespace detail

inline MatXcd build_A(const ArrayConfig &cfg, const MainlobeRegion &region, const GridSpec &grid)
{
    return detail::assemble_gram(cfg, region.omega_min, region.omega_max, region.r_lo,
                                 region.r_hi, grid);
}

inline MatXcd build_B(const ArrayConfig &cfg, const TotalRegion &region, const GridSpec &grid)
{
    return detail::assemble_gram(cfg, region.omega_min, region.omega_max, region.r_lo,
                                 region.r_hi, grid);
}

// The matrix pair of the concentration problem plus everything needed to
// audit how it was built.
struct ConcentrationPair
{
    MatXcd A;
    MatXcd B;
    MainlobeRegion mainlobe;
    TotalRegion total;
    GridSpec grid_A;
    GridSpec grid_B;
    bool regularized = false;
    double epsilon_applied = 0.0;
};

inline constexpr double regularization_eps = 1e-10;

// Adds eps*tr(B)/N to the diagonal when the smallest eigenvalue of B falls
// below that level, so the Cholesky factorization cannot break down.
inline void regularize_B(ConcentrationPair &pair)
{
    const int N = int(pair.B.rows());
    const double level = regularization_eps * pair.B.trace().real() / N;
    Eigen::SelfAdjointEigenSolver<MatXcd> es(pair.B, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("regularize_B: eigenvalue probe failed");
    if (es.eigenvalues()(0) < level)
    {
        pair.B += level * MatXcd::Identity(N, N);
        pair.regularized = true;
        pair.epsilon_applied = level;
    }
}

inline ConcentrationPair build_pair(const ArrayConfig &cfg, const FocusPoint &focus,
                                    double k_angle, double k_range,
                                    const GridSpec &grid_A = GridSpec::default_mainlobe(),
                                    const GridSpec &grid_B = GridSpec::default_total(),
                                    RegionPolicy policy = RegionPolicy::subset_adjusted)
{
    const MainlobeRegion ml = mainlobe_region(cfg, focus, k_angle, k_range);
    const TotalRegion tot = total_region(cfg, ml, policy);
    ConcentrationPair pair{build_A(cfg, ml, grid_A), build_B(cfg, tot, grid_B),
                           ml, tot, grid_A, grid_B};
    regularize_B(pair);
    return pair;
}

struct EigenResult
{
    VecXd eigenvalues;  // real, descending
    MatXcd eigenvectors; // B-orthonormal columns, same order
    VecXd residuals;    // ||A v - lambda B v|| per pair
};

// Solves A v = lambda B v through B = L L^H: the standard Hermitian problem
// on L^-1 A L^-H, eigenvectors mapped back as v = L^-H y (hence B-orthonormal).
inline EigenResult generalized_herm_eig(const ConcentrationPair &pair)
{
    const int N = int(pair.A.rows());
    Eigen::LLT<MatXcd> llt(pair.B);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("generalized_herm_eig: Cholesky factorization of B failed "
                                 "after regularization; B condition is beyond repair");

    MatXcd T = llt.matrixL().solve(pair.A);
    MatXcd C = llt.matrixL().solve(T.adjoint()).adjoint(); // L^-1 A L^-H
    C = 0.5 * (C + C.adjoint().eval());

    Eigen::SelfAdjointEigenSolver<MatXcd> es(C);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("generalized_herm_eig: eigensolver failed");

    EigenResult res;
    res.eigenvalues.resize(N);
    res.eigenvectors.resize(N, N);
    res.residuals.resize(N);
    for (int k = 0; k < N; ++k) // Eigen sorts ascending; flip to descending
    {
        const int src = N - 1 - k;
        res.eigenvalues(k) = es.eigenvalues()(src);
        res.eigenvectors.col(k) = llt.matrixU().solve(es.eigenvectors().col(src));
        res.residuals(k) = (pair.A * res.eigenvectors.col(k)
                            - res.eigenvalues(k) * (pair.B * res.eigenvectors.col(k)))
                               .norm();
    }
    return res;
}

// Generalized Rayleigh quotient (w^H A w) / (w^H B w); both forms are real
// up to rounding because A and B are Hermitian.
inline double concentration_J(const VecXcd &w, const ConcentrationPair &pair)
{
    if (w.norm() == 0.0)
        throw std::invalid_argument("concentration_J: zero vector");
    const double num = (w.adjoint() * pair.A * w)(0).real();
    const double den = (w.adjoint() * pair.B * w)(0).real();
    return num / den;
}

struct SlepianTaper
{
    Taper taper;        // |v_max|, peak-one
    double lambda_max;  // dominant generalized eigenvalue
    double J;           // Rayleigh quotient of the complex v_max (== lambda_max)
    double phase_rms;   // rad, residual eigenvector phase after removing the focus phase
    VecXcd v_max;       // phase-fixed dominant eigenvector
};

// Dominant-eigenvector taper: the eigenvector phase is fixed by rotating the
// center element real positive, then magnitudes are taken. The discarded
// phase is summarized relative to the focusing chirp.
inline SlepianTaper slepian_taper(const ArrayConfig &cfg, const FocusPoint &focus,
                                  const ConcentrationPair &pair)
{
    const EigenResult eig = generalized_herm_eig(pair);
    VecXcd v = eig.eigenvectors.col(0);

    const int center = cfg.N / 2;
    const cxd c = v(center);
    if (std::abs(c) > 0.0)
        v *= std::polar(1.0, -std::arg(c));

    VecXd mag = v.cwiseAbs();
    const double peak = mag.maxCoeff();
    if (!(peak > 0.0))
        throw std::runtime_error("slepian_taper: dominant eigenvector is zero");

    // residual phase against the focusing chirp, amplitude-weighted elements only
    const VecXcd foc = steer_omega(cfg, omega_from_theta(cfg, focus.theta_u), focus.r_f);
    VecXcd res = v.cwiseProduct(foc.conjugate());
    res *= std::polar(1.0, -std::arg(res(center)));
    double acc = 0.0;
    int cnt = 0;
    for (int k = 0; k < cfg.N; ++k)
        if (mag(k) > 1e-9 * peak)
        {
            const double ph = std::arg(res(k));
            acc += ph * ph;
            ++cnt;
        }

    SlepianTaper out{Taper(mag / peak, "slepian"), eig.eigenvalues(0),
                     concentration_J(eig.eigenvectors.col(0), pair),
                     cnt > 0 ? std::sqrt(acc / cnt) : 0.0, v};
    return out;
}

inline SlepianTaper slepian_taper(const ArrayConfig &cfg, const FocusPoint &focus,
                                  double k_angle, double k_range,
                                  const GridSpec &grid_A = GridSpec::default_mainlobe(),
                                  const GridSpec &grid_B = GridSpec::default_total(),
                                  RegionPolicy policy = RegionPolicy::subset_adjusted)
{
    return slepian_taper(cfg, focus, build_pair(cfg, focus, k_angle, k_range, grid_A, grid_B, policy));
}

} // namespace nftaper

#endif // NFTAPER_SLEPIAN_HPP
