// SPDX-License-Identifier: Apache-2.0
//
// squint: beam-squint analysis and RF-chain budgeting for wideband hybrid arrays
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

#include "squint/channel.hpp"
#include "squint/errors.hpp"
#include "squint/spectra.hpp"
#include "squint/squint_metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace squint;
using doctest::Approx;

TEST_CASE("Dirichlet gain")
{
    for (std::size_t n : {1u, 2u, 7u, 64u})
    {
        CHECK(dirichlet_gain(n, 0.0) == Approx(static_cast<double>(n)).epsilon(1e-15));
        CHECK(dirichlet_gain(n, 4.0 * std::numbers::pi) == Approx(static_cast<double>(n)).epsilon(1e-12));
    }
    for (double x : {-3.0, 0.1, 1.7, 100.0})
        CHECK(dirichlet_gain(1, x) == Approx(1.0).epsilon(1e-15));

    oracle::Rng rng(41);
    for (int trial = 0; trial < 500; ++trial)
    {
        const std::size_t n = rng.index(1, 200);
        const double x = trial == 0 ? std::numbers::pi / 8 : rng.uniform(-10.0, 10.0);
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            sum += std::polar(1.0, -x * static_cast<double>(k));
        const double direct = std::norm(sum) / static_cast<double>(n);
        const double g = dirichlet_gain(n, x);
        CHECK(std::abs(g - direct) <= 1e-12 * static_cast<double>(n));
        CHECK(g >= 0.0);
        CHECK(g <= static_cast<double>(n) * (1.0 + 1e-15));
    }
    CHECK_THROWS_AS(dirichlet_gain(0, 1.0), InvalidArgument);
}

TEST_CASE("MRT gain of a ULA")
{
    const BandSpec band(28e9, 4e9);
    const ArrayGeometry geom = ArrayGeometry::in_wavelengths(32, 1, 0.5, band);
    const Direction dir(0.6, 0.0);
    CHECK(mrt_gain_ula(geom, dir, band, 0.0) == Approx(32.0).epsilon(1e-14));

    const AnalogBeamformer mrt(steering_vector(geom, dir, band, 0.0).channel() / std::sqrt(32.0));
    oracle::Rng rng(42);
    for (int k = 0; k < 50; ++k)
    {
        const double f = rng.uniform(-0.5, 0.5) * band.bandwidth();
        CHECK(mrt_gain_ula(geom, dir, band, f) ==
              Approx(instantaneous_gain(mrt, steering_vector(geom, dir, band, f)).gain).epsilon(1e-12));
        CHECK(mrt_gain_ula(geom, Direction(0.0, 0.0), band, f) == Approx(32.0).epsilon(1e-14));
    }

    const ArrayGeometry upa = ArrayGeometry::in_wavelengths(8, 4, 0.5, band);
    CHECK_THROWS_AS(mrt_gain_ula(upa, dir, band, 0.0), InvalidArgument);
    CHECK_THROWS_AS(mrt_gain_ula(geom, dir, band, 3e9), InvalidArgument);
}

TEST_CASE("3 dB dispersion factor")
{
    // Large-N limit: root of sinc(a / 2) = 1 / sqrt(2), printed to three digits as 0.886.
    double lo = 0.5, hi = 1.5;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (oracle::sinc(0.5 * mid) > 1.0 / std::sqrt(2.0) ? lo : hi) = mid;
    }
    const double limit = 0.5 * (lo + hi);
    CHECK(limit == Approx(0.886).epsilon(2e-4));

    CHECK(alpha_3db(2) == Approx(1.0).epsilon(1e-10));
    CHECK(alpha_3db(4096) == Approx(limit).epsilon(1e-6));
    CHECK(std::abs(alpha_3db(3) / 0.886 - 1.0) < 0.055);
    CHECK(alpha_3db(8) > alpha_3db(64));
    CHECK(alpha_3db(64) > alpha_3db(1024));

    double previous = 2.0;
    for (std::size_t n = 2; n <= 600; n += (n < 40 ? 1 : 37))
    {
        const double a = alpha_3db(n);
        CHECK(a > limit);
        CHECK(a < 1.0 + 1e-10); // n = 2 sits exactly at 1
        CHECK(a < previous);
        previous = a;

        // The root really is the band-edge 3 dB point.
        const double edge = dirichlet_gain(n, std::numbers::pi * a / static_cast<double>(n));
        CHECK(edge == Approx(0.5 * static_cast<double>(n)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(alpha_3db(1), InvalidArgument);
    CHECK_THROWS_AS(alpha_3db(0), InvalidArgument);
}

TEST_CASE("beam pattern scaling and broadside immunity")
{
    const BandSpec band(100e9, 20e9);
    const ArrayGeometry geom = ArrayGeometry::in_wavelengths(12, 6, 0.5, band);
    oracle::Rng rng(43);
    const Eigen::VectorXcd w = Eigen::VectorXcd::Random(72);
    for (int k = 0; k < 200; ++k)
    {
        const double f = rng.uniform(-0.5, 0.5) * band.bandwidth();
        const double scale = 1.0 + f / band.carrier();
        const double r = rng.uniform(0.0, 1.0 / scale - 1e-9), phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double ux = r * std::cos(phi), uy = r * std::sin(phi);
        const Eigen::VectorXcd a = oracle::steering(geom, ux, uy, band.carrier(), f).conjugate();
        const Eigen::VectorXcd a0 =
            oracle::steering(geom, scale * ux, scale * uy, band.carrier(), 0.0).conjugate();
        CHECK(std::abs(std::norm(w.dot(a)) - std::norm(w.dot(a0))) <= 1e-10 * std::max(1.0, std::norm(w.dot(a0))));

        const Eigen::VectorXcd b = steering_vector(geom, Direction(0.0, 0.0), band, f).channel();
        const Eigen::VectorXcd b0 = steering_vector(geom, Direction(0.0, 0.0), band, 0.0).channel();
        CHECK((b - b0).norm() < 1e-12);
    }
}
