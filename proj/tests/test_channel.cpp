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

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace squint;
using doctest::Approx;

TEST_CASE("steering vector entries")
{
    const BandSpec band(28e9, 4e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(16, 8, 0.5, band);

    const SteeringVector broad = steering_vector(g, Direction(0.0, 0.0), band, 1.3e9);
    CHECK((broad.entries.array() - 1.0).abs().maxCoeff() < 1e-15);

    oracle::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Direction dir = uv_from_angles(rng.uniform(0, 360), rng.uniform(0, 90));
        const double f = rng.uniform(-2e9, 2e9);
        const SteeringVector v = steering_vector(g, dir, band, f);
        CHECK((v.entries.array().abs() - 1.0).abs().maxCoeff() < 1e-14);
        const Eigen::VectorXcd ref = oracle::steering(g, dir.u_x(), dir.u_y(), band.carrier(), f);
        CHECK((v.entries - ref).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((v.channel() - ref.conjugate()).cwiseAbs().maxCoeff() < 1e-12);

        // Kronecker structure.
        const Eigen::VectorXcd ax = steering_entries_x(g, dir, band, f);
        const Eigen::VectorXcd ay = steering_entries_y(g, dir, band, f);
        double err = 0.0;
        for (Eigen::Index i = 0; i < ax.size(); ++i)
            for (Eigen::Index j = 0; j < ay.size(); ++j)
                err = std::max(err, std::abs(v.entries[i * ay.size() + j] - ax[i] * ay[j]));
        CHECK(err < 1e-13);

        // Frequency scaling of the direction.
        const Eigen::VectorXcd scaled = steering_entries(g, dir.scaled_unchecked(1.0 + f / band.carrier()), band, 0.0);
        CHECK((v.entries - scaled).cwiseAbs().maxCoeff() < 1e-11);
    }
    CHECK_THROWS_AS(steering_vector(g, Direction(0.5, 0.0), band, 2.1e9), InvalidArgument);
}

TEST_CASE("dirichlet ratio")
{
    for (std::size_t n : {1u, 2u, 3u, 8u, 33u})
        for (double x : {0.0, 1e-12, 0.3, -1.7, 2 * std::numbers::pi, 4 * std::numbers::pi + 1e-11, -6 * std::numbers::pi, 10.0})
        {
            std::complex<double> s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += std::polar(1.0, (static_cast<double>(k) - 0.5 * static_cast<double>(n - 1)) * x);
            CHECK(std::abs(s.imag()) < 1e-12 * static_cast<double>(n));
            CHECK(dirichlet_ratio(n, x) == Approx(s.real()).epsilon(1e-12).scale(static_cast<double>(n)));
        }
}

TEST_CASE("steering inner product")
{
    const BandSpec band(60e9, 10e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(16, 8, 0.5, band);
    oracle::Rng rng(4);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Direction dir = uv_from_angles(rng.uniform(0, 360), rng.uniform(0, 90));
        const double f1 = rng.uniform(-5e9, 5e9), f2 = rng.uniform(-5e9, 5e9);
        const std::complex<double> ip = steering_inner_product(g, dir, band, f1, f2);
        // a^*(f1) a(f2): the steering entries at f1 times the channel at f2.
        const std::complex<double> brute =
            (oracle::steering(g, dir.u_x(), dir.u_y(), band.carrier(), f1).array() *
             oracle::steering(g, dir.u_x(), dir.u_y(), band.carrier(), f2).conjugate().array())
                .sum();
        CHECK(std::abs(ip - brute) <= 1e-12 * std::max(1.0, std::abs(brute)) * 16);
        CHECK(std::abs(ip) <= static_cast<double>(g.size()) * (1 + 1e-14));
        CHECK(std::abs(ip - std::conj(steering_inner_product(g, dir, band, f2, f1))) < 1e-12);
        CHECK(steering_inner_product(g, dir, band, f1, f1).real() == Approx(128.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(steering_inner_product(g, Direction(0.3, 0.1), band, 0.0, 6e9), InvalidArgument);

    // ULA: |a^*(f) a(0)|^2 / N = F_N(2 pi d u f / c).
    const ArrayGeometry ula = ArrayGeometry::in_wavelengths(64, 1, 0.5, band);
    const Direction dir(0.7, 0.0);
    for (double f : {-4e9, 1e9, 3.3e9})
    {
        const double x = 2 * std::numbers::pi * ula.d_x() * 0.7 * f / kSpeedOfLight;
        const double fn = std::pow(std::sin(64 * x / 2) / std::sin(x / 2), 2) / 64;
        CHECK(std::norm(steering_inner_product(ula, dir, band, f, 0.0)) / 64 == Approx(fn).epsilon(1e-12));
    }
}

TEST_CASE("link budget")
{
    const LinkBudget base{1.0, 1.0, 1.0, 100.0, 4e-21};
    const BandSpec band(kSpeedOfLight / 1e-3, 1e9); // lambda = 1 mm
    const double s = snr(band, base);
    // (1e-3)^2 / ((4 pi 100)^2 * 1e9 * 4e-21)
    const double expected = 1e-6 / (std::pow(400 * std::numbers::pi, 2) * 4e-12);
    CHECK(s == Approx(expected).epsilon(1e-12));
    CHECK(s == Approx(0.158314).epsilon(1e-5));

    LinkBudget far = base;
    far.range = 200.0;
    CHECK(snr(band, far) == Approx(s / 4).epsilon(1e-14));
    CHECK(snr(BandSpec(band.carrier(), 2e9), base) == Approx(s / 2).epsilon(1e-14));

    LinkBudget bad = base;
    bad.n0 = 0.0;
    CHECK_THROWS_AS(snr(band, bad), InvalidArgument);
}
