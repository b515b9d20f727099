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

#ifndef NFTAPER_ARRAY_HPP
#define NFTAPER_ARRAY_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nftaper
{

inline constexpr double speed_of_light = 299792458.0; // m/s, exact

using cxd = std::complex<double>;
using VecXd = Eigen::VectorXd;
using VecXcd = Eigen::VectorXcd;
using MatXcd = Eigen::MatrixXcd;

enum class IndexConvention
{
    centered,  // n in {-(N-1)/2, ..., (N-1)/2}, half-integers for even N
    zero_based // n in {0, ..., N-1}
};

enum class SteeringModel
{
    far_field, // plane wave, angle only
    exact,     // spherical wavefront, element-wise Euclidean distance
    fresnel,   // second-order (quadratic) expansion of the exact model
    omega      // Fresnel model in the spatial-frequency variable Omega
};

// ULA geometry and carrier. Aperture and field boundaries are derived on demand.
struct ArrayConfig
{
    int N = 2;
    double d = 0.0;                  // element spacing, m
    double carrier_frequency = 0.0;  // Hz
    IndexConvention indexing = IndexConvention::centered;
    bool aperture_includes_margin = false; // D = N*d instead of (N-1)*d

    ArrayConfig() = default;

    ArrayConfig(int n_elements, double spacing, double f_hz,
                IndexConvention conv = IndexConvention::centered)
        : N(n_elements), d(spacing), carrier_frequency(f_hz), indexing(conv)
    {
        if (N < 2)
            throw std::invalid_argument("ArrayConfig: N must be >= 2");
        if (d <= 0.0)
            throw std::invalid_argument("ArrayConfig: spacing must be positive");
        if (carrier_frequency <= 0.0)
            throw std::invalid_argument("ArrayConfig: carrier frequency must be positive");
    }

    static ArrayConfig half_wavelength(int n_elements, double f_hz,
                                       IndexConvention conv = IndexConvention::centered)
    {
        const double lam = speed_of_light / f_hz;
        return ArrayConfig(n_elements, 0.5 * lam, f_hz, conv);
    }

    double wavelength() const { return speed_of_light / carrier_frequency; }
    double wavenumber() const { return 2.0 * M_PI / wavelength(); } // nu = 2*pi/lambda

    // Element index of array position k under the active convention.
    double index(int k) const
    {
        return indexing == IndexConvention::centered ? k - 0.5 * (N - 1) : double(k);
    }

    VecXd indices() const
    {
        VecXd n(N);
        for (int k = 0; k < N; ++k)
            n(k) = index(k);
        return n;
    }

    double aperture_length() const
    {
        return aperture_includes_margin ? N * d : (N - 1) * d;
    }

    double rayleigh_distance() const
    {
        const double D = aperture_length();
        return 2.0 * D * D / wavelength();
    }

    double fresnel_inner() const
    {
        const double D = aperture_length();
        return 0.62 * std::sqrt(D * D * D / wavelength());
    }
};

struct FocusPoint
{
    double theta_u = 0.0; // rad, |theta_u| < pi/2
    double r_f = 0.0;     // m, > 0

    FocusPoint() = default;
    FocusPoint(double theta, double range) : theta_u(theta), r_f(range)
    {
        if (!(std::abs(theta_u) < M_PI / 2.0))
            throw std::invalid_argument("FocusPoint: |theta_u| must be < pi/2");
        if (!(r_f > 0.0))
            throw std::invalid_argument("FocusPoint: r_f must be positive");
    }
};

struct FieldBounds
{
    double fresnel_inner;      // 0.62*sqrt(D^3/lambda)
    double rayleigh_distance;  // 2*D^2/lambda
};

inline FieldBounds field_bounds(const ArrayConfig &cfg)
{
    return FieldBounds{cfg.fresnel_inner(), cfg.rayleigh_distance()};
}

// Spatial frequency Omega = (d/lambda)*sin(theta); |Omega| <= d/lambda.
inline double omega_from_theta(const ArrayConfig &cfg, double theta)
{
    return cfg.d / cfg.wavelength() * std::sin(theta);
}

// ---------------------------------------------------------------- steering

// Far-field steering vector, (1/sqrt(N)) * exp(-j*nu*n*d*sin(theta)).
inline VecXcd steer_far_field(const ArrayConfig &cfg, double theta)
{
    const double nu = cfg.wavenumber();
    const double s = std::sin(theta);
    const double a = 1.0 / std::sqrt(double(cfg.N));
    VecXcd b(cfg.N);
    for (int k = 0; k < cfg.N; ++k)
        b(k) = std::polar(a, -nu * cfg.index(k) * cfg.d * s);
    return b;
}

// Exact spherical-wavefront steering vector. The phase advances with the
// path-length difference dist(n) - r so that the quadratic expansion of the
// phase matches the Fresnel model below; see steer_fresnel.
inline VecXcd steer_exact(const ArrayConfig &cfg, double theta, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("steer_exact: r must be positive");
    const double nu = cfg.wavenumber();
    const double s = std::sin(theta);
    const double a = 1.0 / std::sqrt(double(cfg.N));
    VecXcd b(cfg.N);
    for (int k = 0; k < cfg.N; ++k)
    {
        const double nd = cfg.index(k) * cfg.d;
        const double dist = std::sqrt(r * r + nd * nd - 2.0 * r * nd * s);
        b(k) = std::polar(a, nu * (dist - r));
    }
    return b;
}

// Fresnel (second-order) steering vector,
// (1/sqrt(N)) * exp(-j*nu*(n*d*sin(theta) - n^2*d^2*cos^2(theta)/(2r))).
inline VecXcd steer_fresnel(const ArrayConfig &cfg, double theta, double r)
{
    if (!(r > 0.0))
        throw std::invalid_argument("steer_fresnel: r must be positive");
    const double nu = cfg.wavenumber();
    const double s = std::sin(theta);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double a = 1.0 / std::sqrt(double(cfg.N));
    VecXcd b(cfg.N);
    for (int k = 0; k < cfg.N; ++k)
    {
        const double nd = cfg.index(k) * cfg.d;
        b(k) = std::polar(a, -nu * (nd * s - nd * nd * c2 / (2.0 * r)));
    }
    return b;
}

// Fresnel steering in the spatial-frequency variable,
// (1/sqrt(N)) * exp(-j*2*pi*(Omega*n - n^2*d^2/(2*r*lambda) + Omega^2*n^2*lambda/(2r))).
inline VecXcd steer_omega(const ArrayConfig &cfg, double Omega, double r)
{
    const double lam = cfg.wavelength();
    if (std::abs(Omega) > cfg.d / lam + 1e-15)
        throw std::invalid_argument("steer_omega: |Omega| must be <= d/lambda");
    if (!(r > 0.0))
        throw std::invalid_argument("steer_omega: r must be positive");
    const double a = 1.0 / std::sqrt(double(cfg.N));
    VecXcd b(cfg.N);
    for (int k = 0; k < cfg.N; ++k)
    {
        const double n = cfg.index(k);
        const double ph = Omega * n - n * n * cfg.d * cfg.d / (2.0 * r * lam)
                        + Omega * Omega * n * n * lam / (2.0 * r);
        b(k) = std::polar(a, -2.0 * M_PI * ph);
    }
    return b;
}

inline VecXcd steer(const ArrayConfig &cfg, SteeringModel model, double theta, double r)
{
    switch (model)
    {
    case SteeringModel::far_field: return steer_far_field(cfg, theta);
    case SteeringModel::exact:     return steer_exact(cfg, theta, r);
    case SteeringModel::fresnel:   return steer_fresnel(cfg, theta, r);
    case SteeringModel::omega:     return steer_omega(cfg, omega_from_theta(cfg, theta), r);
    }
    throw std::logic_error("steer: unknown model");
}

} // namespace nftaper

#endif // NFTAPER_ARRAY_HPP
