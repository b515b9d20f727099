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

#include <catch2/catch_amalgamated.hpp>

#include "nftaper/array.hpp"

using namespace nftaper;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ArrayConfig ref_config() { return ArrayConfig::half_wavelength(128, 15.0e9); }

double max_phase_diff(const VecXcd &a, const VecXcd &b)
{
    double worst = 0.0;
    for (int k = 0; k < a.size(); ++k)
        worst = std::max(worst, std::abs(std::arg(a(k) * std::conj(b(k)))));
    return worst;
}

} // namespace

TEST_CASE("config validation", "[array]")
{
    CHECK_THROWS_AS(ArrayConfig(1, 0.01, 1.0e9), std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig(8, 0.0, 1.0e9), std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig(8, -0.01, 1.0e9), std::invalid_argument);
    CHECK_THROWS_AS(ArrayConfig(8, 0.01, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FocusPoint(M_PI / 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FocusPoint(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FocusPoint(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("wavelength derives from the carrier at full precision", "[array]")
{
    const ArrayConfig cfg = ref_config();
    CHECK(cfg.wavelength() == 299792458.0 / 15.0e9);
    CHECK(cfg.d == 0.5 * cfg.wavelength());
    CHECK_THAT(cfg.wavelength(), WithinAbs(0.019986164, 1e-9));
    CHECK_THAT(cfg.wavenumber(), WithinRel(2.0 * M_PI / cfg.wavelength(), 1e-15));
}

TEST_CASE("aperture length conventions", "[array]")
{
    CHECK_THAT(ArrayConfig(2, 0.01, 1.0e9).aperture_length(), WithinAbs(0.01, 1e-15));
    CHECK_THAT(ArrayConfig(128, 0.01, 1.0e9).aperture_length(), WithinAbs(1.27, 1e-12));

    ArrayConfig margin(128, 0.01, 1.0e9);
    margin.aperture_includes_margin = true;
    CHECK_THAT(margin.aperture_length(), WithinAbs(1.28, 1e-12));

    CHECK_THAT(ref_config().aperture_length(), WithinAbs(1.269121, 1e-5));
}

TEST_CASE("field boundaries at the reference config", "[array]")
{
    const ArrayConfig cfg = ref_config();
    const FieldBounds fb = field_bounds(cfg);
    CHECK_THAT(fb.rayleigh_distance, WithinAbs(161.178419, 1e-4));
    CHECK_THAT(fb.fresnel_inner, WithinAbs(6.270205, 1e-4));
    CHECK(fb.fresnel_inner < fb.rayleigh_distance);

    for (int n : {2, 8, 32, 512})
    {
        const auto b = field_bounds(ArrayConfig::half_wavelength(n, 15.0e9));
        CHECK(b.fresnel_inner > 0.0);
        CHECK(b.fresnel_inner < b.rayleigh_distance);
    }
}

TEST_CASE("index conventions", "[array]")
{
    ArrayConfig cfg(4, 0.01, 1.0e9);
    const VecXd c = cfg.indices();
    CHECK(c(0) == -1.5);
    CHECK(c(1) == -0.5);
    CHECK(c(2) == 0.5);
    CHECK(c(3) == 1.5);

    cfg.indexing = IndexConvention::zero_based;
    const VecXd z = cfg.indices();
    for (int k = 0; k < 4; ++k)
        CHECK(z(k) == double(k));
}

TEST_CASE("far-field steering", "[array]")
{
    const ArrayConfig cfg = ref_config();

    SECTION("broadside is uniform phase")
    {
        const VecXcd a = steer_far_field(cfg, 0.0);
        for (int k = 0; k < cfg.N; ++k)
        {
            CHECK_THAT(a(k).real(), WithinAbs(1.0 / std::sqrt(128.0), 1e-15));
            CHECK_THAT(a(k).imag(), WithinAbs(0.0, 1e-15));
        }
    }

    SECTION("unit norm at arbitrary angles")
    {
        for (double th : {-1.3, -0.4, 0.0, 0.7, 1.5})
            CHECK_THAT(steer_far_field(cfg, th).norm(), WithinAbs(1.0, 1e-12));
    }

    SECTION("two-element endfire phase, zero-based indexing")
    {
        const ArrayConfig two =
            ArrayConfig::half_wavelength(2, 15.0e9, IndexConvention::zero_based);
        const VecXcd a = steer_far_field(two, M_PI / 2);
        const double s = 1.0 / std::sqrt(2.0);
        CHECK_THAT(a(0).real(), WithinAbs(s, 1e-12));
        CHECK_THAT(a(0).imag(), WithinAbs(0.0, 1e-12));
        CHECK_THAT(a(1).real(), WithinAbs(-s, 1e-12)); // e^{-j pi}
        CHECK_THAT(a(1).imag(), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("spherical-wave steering", "[array]")
{
    const ArrayConfig cfg = ref_config();
    const double rd = cfg.rayleigh_distance();

    SECTION("center element of an odd array sees no phase")
    {
        const ArrayConfig odd = ArrayConfig::half_wavelength(129, 15.0e9);
        const VecXcd b = steer_exact(odd, 0.37, 3.0);
        CHECK_THAT(b(64).real(), WithinAbs(1.0 / std::sqrt(129.0), 1e-15));
        CHECK_THAT(b(64).imag(), WithinAbs(0.0, 1e-15));
    }

    SECTION("nonpositive range rejected")
    {
        CHECK_THROWS_AS(steer_exact(cfg, 0.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(steer_exact(cfg, 0.0, -2.0), std::invalid_argument);
    }

    SECTION("far-field limit")
    {
        for (double th : {0.0, 0.3, -0.9})
        {
            const double dev =
                max_phase_diff(steer_exact(cfg, th, 1.0e6 * rd), steer_far_field(cfg, th));
            CHECK(dev < 1e-3);
        }
    }

    SECTION("convergence toward the far field is monotone over decades")
    {
        double prev = std::numeric_limits<double>::infinity();
        for (int decade = 0; decade <= 5; ++decade)
        {
            const double r = rd * std::pow(10.0, decade);
            const double dev = max_phase_diff(steer_exact(cfg, 0.0, r), steer_far_field(cfg, 0.0));
            CHECK(dev < prev);
            prev = dev;
        }
    }
}

TEST_CASE("quadratic-phase steering", "[array]")
{
    const ArrayConfig cfg = ref_config();

    SECTION("matches the spherical model at the Rayleigh distance")
    {
        const double dev = max_phase_diff(steer_fresnel(cfg, 0.0, cfg.rayleigh_distance()),
                                          steer_exact(cfg, 0.0, cfg.rayleigh_distance()));
        CHECK(dev < 0.05);
    }

    SECTION("broadside far limit is uniform phase")
    {
        const VecXcd b = steer_fresnel(cfg, 0.0, 1.0e12);
        for (int k = 0; k < cfg.N; ++k)
            CHECK_THAT(std::arg(b(k)), WithinAbs(0.0, 1e-9));
    }

    SECTION("opposite angles mirror the element axis")
    {
        // odd linear term, even quadratic term: negating theta reverses the
        // element order, entry for entry
        const double th = 0.41, r = 2.2;
        const VecXcd p = steer_fresnel(cfg, th, r);
        const VecXcd m = steer_fresnel(cfg, -th, r);
        for (int k = 0; k < cfg.N; ++k)
            CHECK_THAT(std::abs(p(k) - m(cfg.N - 1 - k)), WithinAbs(0.0, 1e-12));
    }

    SECTION("nonpositive range rejected")
    {
        CHECK_THROWS_AS(steer_fresnel(cfg, 0.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("spatial-frequency steering", "[array]")
{
    const ArrayConfig cfg = ref_config();

    SECTION("out-of-range spatial frequency rejected")
    {
        CHECK_THROWS_AS(steer_omega(cfg, 0.51, 2.0), std::invalid_argument);
        CHECK_THROWS_AS(steer_omega(cfg, -0.6, 2.0), std::invalid_argument);
    }

    SECTION("zero spatial frequency reproduces broadside")
    {
        for (double r : {0.5, 1.6, 40.0})
        {
            const VecXcd o = steer_omega(cfg, 0.0, r);
            const VecXcd f = steer_fresnel(cfg, 0.0, r);
            for (int k = 0; k < cfg.N; ++k)
                CHECK_THAT(std::abs(o(k) - f(k)), WithinAbs(0.0, 1e-13));
        }
    }

    SECTION("substitution identity against the angle-domain model")
    {
        // Omega = (d/lambda) sin(theta)
        for (double th : {-1.0, -0.3, 0.15, M_PI / 6, 0.7, 1.2})
            for (double r : {0.5, 3.0, 40.0})
            {
                const VecXcd o = steer_omega(cfg, omega_from_theta(cfg, th), r);
                const VecXcd f = steer_fresnel(cfg, th, r);
                for (int k = 0; k < cfg.N; ++k)
                    CHECK_THAT(std::abs(o(k) - f(k)), WithinAbs(0.0, 1e-12));
            }
    }

    SECTION("half-wavelength spacing maps 30 degrees to 0.25")
    {
        CHECK_THAT(omega_from_theta(cfg, M_PI / 6), WithinAbs(0.25, 1e-15));
    }
}

TEST_CASE("all models produce unit-norm constant-modulus vectors", "[array]")
{
    const ArrayConfig cfg = ref_config();
    const double a = 1.0 / std::sqrt(double(cfg.N));
    const VecXcd vs[] = {steer_far_field(cfg, 0.62), steer_exact(cfg, 0.62, 4.7),
                         steer_fresnel(cfg, 0.62, 4.7), steer_omega(cfg, 0.29, 4.7)};
    for (const VecXcd &v : vs)
    {
        CHECK_THAT(v.norm(), WithinAbs(1.0, 1e-12));
        for (int k = 0; k < cfg.N; ++k)
            CHECK_THAT(std::abs(v(k)), WithinAbs(a, 1e-14));
    }
}

TEST_CASE("steering dispatcher selects the right model", "[array]")
{
    const ArrayConfig cfg = ref_config();
    CHECK(steer(cfg, SteeringModel::far_field, 0.3, 5.0) == steer_far_field(cfg, 0.3));
    CHECK(steer(cfg, SteeringModel::exact, 0.3, 5.0) == steer_exact(cfg, 0.3, 5.0));
    CHECK(steer(cfg, SteeringModel::fresnel, 0.3, 5.0) == steer_fresnel(cfg, 0.3, 5.0));
}
