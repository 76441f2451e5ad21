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

#include "squint/errors.hpp"
#include "squint/spectra.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace squint;
using doctest::Approx;

namespace
{
    // ULA of n half-wavelength elements steered to u_x with dispersion factor alpha.
    struct UlaCase
    {
        ArrayGeometry geom;
        Direction dir;
        BandSpec band;
    };

    UlaCase ula_case(std::size_t n, double alpha, double u = 0.8, double fc = 30e9)
    {
        const ArrayGeometry g = ArrayGeometry::ula(n, 0.5 * kSpeedOfLight / fc);
        const double w = alpha * kSpeedOfLight / (g.aperture_x() * u);
        return {g, Direction(u, 0.0), BandSpec(fc, w)};
    }

    Eigen::MatrixXcd random_matrix(oracle::Rng &rng, Eigen::Index rows, Eigen::Index cols)
    {
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                m(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        return m;
    }

    double relative_top(const Eigen::VectorXd &a, const Eigen::VectorXd &b, Eigen::Index count)
    {
        const double floor = 1e-6 * b[0];
        double worst = 0.0;
        for (Eigen::Index l = 0; l < count; ++l)
            worst = std::max(worst, std::abs(a[l] - b[l]) / std::max(b[l], floor));
        return worst;
    }
}

TEST_CASE("correlation matrix structure")
{
    const BandSpec band(28e9, 3e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(8, 6, 0.5, band);

    const CorrelationMatrix broad = correlation_matrix(g, Direction(0.0, 0.0), band);
    CHECK((broad.entries.array() - 1.0).abs().maxCoeff() < 1e-15);
    const SpectrumResult bs = spectrum_dense(broad, false);
    CHECK(bs.eigenvalues[0] == Approx(48.0).epsilon(1e-13));
    CHECK(bs.eigenvalues.tail(47).maxCoeff() < 1e-12);

    oracle::Rng rng(10);
    for (int trial = 0; trial < 10; ++trial)
    {
        const Direction dir = uv_from_angles(rng.uniform(0, 360), rng.uniform(0, 90));
        const CorrelationMatrix b = correlation_matrix(g, dir, band);
        const auto pos = element_positions(g);
        CHECK((b.entries - b.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(b.entries.trace().real() == Approx(48.0).epsilon(1e-14));
        for (std::size_t n = 0; n < pos.size(); ++n)
            for (std::size_t m = 0; m < pos.size(); ++m)
            {
                const double proj = dir.u_x() * (pos[n].x - pos[m].x) + dir.u_y() * (pos[n].y - pos[m].y);
                CHECK(std::abs(b.entries(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n))) ==
                      Approx(std::abs(oracle::sinc(band.bandwidth() * proj / kSpeedOfLight))).epsilon(1e-13));
            }
        const SpectrumResult s = spectrum_dense(b, false);
        CHECK(s.eigenvalues.minCoeff() >= 0.0);
        CHECK(s.eigenvalues.maxCoeff() <= 48.0 * (1 + 1e-14));
        CHECK(s.eigenvalues.sum() == Approx(48.0).epsilon(1e-11));
    }

    const ArrayGeometry big = ArrayGeometry::in_wavelengths(65, 64, 0.5, band);
    CHECK_THROWS_AS(correlation_matrix(big, Direction(0.2, 0.1), band), SizeError);
    CHECK_THROWS_AS(correlation_matrix(g, Direction(0.2, 0.1), band, 40), SizeError);
}

TEST_CASE("correlation matrix against frequency quadrature")
{
    const UlaCase c = ula_case(8, 2.0);
    const Eigen::MatrixXcd b = correlation_matrix(c.geom, c.dir, c.band).entries;
    const Eigen::MatrixXcd q =
        oracle::correlation_by_quadrature(c.geom, c.dir.u_x(), 0.0, c.band.carrier(), c.band.bandwidth(), 60);
    CHECK((b - q).cwiseAbs().maxCoeff() < 1e-10);

    const BandSpec band(10e9, 2e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(5, 4, 0.7, band);
    const Direction dir(0.3, -0.6);
    const Eigen::MatrixXcd b2 = correlation_matrix(g, dir, band).entries;
    const Eigen::MatrixXcd q2 = oracle::correlation_by_quadrature(g, 0.3, -0.6, 10e9, 2e9, 60);
    CHECK((b2 - q2).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("carrier independence of the spectrum")
{
    const ArrayGeometry g(12, 5, 0.004, 0.006);
    const Direction dir(0.5, 0.4);
    const Eigen::VectorXd a = spectrum_dense(correlation_matrix(g, dir, BandSpec(30e9, 5e9)), false).eigenvalues;
    for (double fc : {3e9, 77e9, 300e9})
    {
        const Eigen::VectorXd b = spectrum_dense(correlation_matrix(g, dir, BandSpec(fc, 5e9)), false).eigenvalues;
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12 * 60);
    }
}

TEST_CASE("dense spectrum eigenvectors")
{
    const BandSpec band(60e9, 8e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(10, 6, 0.5, band);
    const CorrelationMatrix b = correlation_matrix(g, uv_from_angles(20, 70), band);
    const SpectrumResult s = spectrum_dense(b, true);
    REQUIRE(s.eigenvectors.has_value());
    const auto &u = *s.eigenvectors;
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b.entries * u - u * s.eigenvalues.head(u.cols()).asDiagonal()).cwiseAbs().maxCoeff() < 1e-11);
    for (Eigen::Index l = 1; l < s.eigenvalues.size(); ++l)
        CHECK(s.eigenvalues[l] <= s.eigenvalues[l - 1]);
    for (std::size_t n = 1; n < 60; ++n)
        CHECK(s.partial_sum(n) <= s.partial_sum(n + 1));
    CHECK(s.partial_sum(1000) == Approx(60.0).epsilon(1e-12));
}

TEST_CASE("scaled ULA spectrum approaches the continuum")
{
    const UlaCase c = ula_case(128, 4.0);
    const SpectrumResult s = spectrum_dense(correlation_matrix(c.geom, c.dir, c.band), false);
    const Eigen::VectorXd cont = oracle::ula_nystrom(4.0, 80);
    for (Eigen::Index l = 0; l < 10; ++l)
        CHECK(std::abs(4.0 / 128 * s.eigenvalues[l] - cont[l]) < 1e-3);
}

TEST_CASE("gram spectrum")
{
    const BandSpec band(100e9, 10e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(16, 16, 0.5, band);
    oracle::Rng rng(11);
    for (int trial = 0; trial < 8; ++trial)
    {
        const Direction dir = uv_from_angles(rng.uniform(0, 360), rng.uniform(10, 90));
        const Eigen::VectorXd dense = spectrum_dense(correlation_matrix(g, dir, band), false).eigenvalues;
        const SpectrumResult gram = spectrum_gram(g, dir, band, 64, true);
        CHECK(gram.eigenvalues.size() == 64);
        CHECK(relative_top(gram.eigenvalues, dense, 10) < 1e-8);

        // Reconstructed eigenvectors of the quadrature approximation are eigenvectors of B.
        REQUIRE(gram.eigenvectors.has_value());
        const auto &u = *gram.eigenvectors;
        const Eigen::MatrixXcd b = correlation_matrix(g, dir, band).entries;
        // Leading, well-conditioned part: reconstruction amplifies round-off by lambda_0 / lambda_l.
        Eigen::Index k = 0;
        while (k < 4 && k < u.cols() && gram.eigenvalues[k] > 1e-3 * gram.eigenvalues[0])
            ++k;
        CHECK((b * u.leftCols(k) - u.leftCols(k) * gram.eigenvalues.head(k).asDiagonal()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK((u.leftCols(k).adjoint() * u.leftCols(k) - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff() < 1e-10);
    }

    const SpectrumResult broad = spectrum_gram(g, Direction(0.0, 0.0), band, 64, false);
    CHECK(broad.eigenvalues[0] == Approx(256.0).epsilon(1e-13));
    CHECK(broad.eigenvalues.tail(63).maxCoeff() < 1e-10);

    // The trace of the quadrature approximation is N for every rule; the spectrum converges.
    const Direction dir = uv_from_angles(30, 80);
    const Eigen::VectorXd ref = spectrum_gram(g, dir, band, 256, false).eigenvalues;
    double previous = 1e300;
    for (std::size_t k : {4u, 8u, 16u, 32u})
    {
        const SpectrumResult s = spectrum_gram(g, dir, band, k, false);
        CHECK(s.eigenvalues.sum() == Approx(256.0).epsilon(1e-12));
        const double err = (s.eigenvalues.head(4) - ref.head(4)).cwiseAbs().maxCoeff();
        CHECK(err <= std::max(previous, 1e-12));
        previous = err;
    }
    CHECK(previous < 1e-9);
    CHECK_THROWS_AS(spectrum_gram(g, dir, band, 1, false), InvalidArgument);
}

TEST_CASE("optimal analog beamformer")
{
    const UlaCase c = ula_case(128, 4.0);
    const CorrelationMatrix b = correlation_matrix(c.geom, c.dir, c.band);
    const SpectrumResult s = spectrum_dense(b, true);

    const AnalogBeamformer all = optimal_analog_beamformer(s, 128);
    CHECK(avg_gain(all, b) == Approx(128.0).epsilon(1e-10));

    double previous = 0.0;
    for (std::size_t n_rf = 1; n_rf <= 12; ++n_rf)
    {
        const double g = avg_gain(optimal_analog_beamformer(s, n_rf), b);
        CHECK(g == Approx(s.partial_sum(n_rf)).epsilon(1e-10));
        CHECK(g >= previous);
        previous = g;
    }

    // ceil(alpha) + 1 = 5 chains at alpha = 4: discrete gain tracks the continuum partial sum.
    const double g5 = avg_gain(optimal_analog_beamformer(s, 5), b) / 128.0;
    const Eigen::VectorXd cont = oracle::ula_nystrom(4.0, 80);
    CHECK(std::abs(g5 - cont.head(5).sum() / 4.0) < 1e-3);
    CHECK(g5 == Approx(0.9883).epsilon(1e-3));

    const BandSpec band(28e9, 2e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(6, 4, 0.5, band);
    const CorrelationMatrix bb = correlation_matrix(g, Direction(0.0, 0.0), band);
    CHECK(avg_gain(optimal_analog_beamformer(spectrum_dense(bb, true), 1), bb) == Approx(24.0).epsilon(1e-12));

    CHECK_THROWS_AS(optimal_analog_beamformer(spectrum_dense(b, false), 2), InvalidArgument);
    CHECK_THROWS_AS(optimal_analog_beamformer(s, 129), InvalidArgument);
}

TEST_CASE("average gain trace formula")
{
    const BandSpec band(60e9, 9e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(8, 4, 0.5, band);
    const Direction dir = uv_from_angles(50, 65);
    const CorrelationMatrix b = correlation_matrix(g, dir, band);
    oracle::Rng rng(12);

    for (int trial = 0; trial < 5; ++trial)
    {
        const auto n_rf = static_cast<Eigen::Index>(rng.index(1, 6));
        const Eigen::MatrixXcd w = random_matrix(rng, 32, n_rf);
        const AnalogBeamformer wa(w);
        const double trace = avg_gain(wa, b);

        // (1/W) int || a^*(f) W (W^H W)^(-1/2) ||^2 df, with an explicit inverse square root.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.adjoint() * w);
        const Eigen::MatrixXcd isq = es.operatorInverseSqrt();
        const auto [f, q] = oracle::gauss_legendre(80, -0.5 * band.bandwidth(), 0.5 * band.bandwidth());
        double direct = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k)
        {
            const Eigen::VectorXcd a = oracle::steering(g, dir.u_x(), dir.u_y(), band.carrier(), f[k]).conjugate();
            direct += q[k] / band.bandwidth() * (isq * w.adjoint() * a).squaredNorm();
        }
        CHECK(trace == Approx(direct).epsilon(1e-9));

        // Projector invariance.
        Eigen::MatrixXcd scaled = w;
        for (Eigen::Index j = 0; j < n_rf; ++j)
            scaled.col(j) *= std::complex<double>(rng.uniform(0.1, 10), rng.uniform(-3, 3));
        CHECK(avg_gain(AnalogBeamformer(scaled), b) == Approx(trace).epsilon(1e-12));
        const Eigen::MatrixXcd mixed = w * (random_matrix(rng, n_rf, n_rf) + 3.0 * Eigen::MatrixXcd::Identity(n_rf, n_rf));
        CHECK(avg_gain(AnalogBeamformer(mixed), b) == Approx(trace).epsilon(1e-10));

        // Quadrature average of instantaneous gains.
        const GainProfile profile = gain_profile(wa, g, dir, band, 80);
        CHECK(profile.g_avg == Approx(trace).epsilon(1e-9));
        CHECK(avg_gain(wa, g, dir, band, 80) == Approx(trace).epsilon(1e-9));
        double wsum = 0.0;
        for (std::size_t k = 0; k < profile.gains.size(); ++k)
        {
            wsum += profile.weights[k];
            CHECK(profile.gains[k] >= 0.0);
            CHECK(profile.gains[k] <= 32.0 * (1 + 1e-12));
        }
        CHECK(wsum == Approx(1.0).epsilon(1e-13));
    }

    Eigen::MatrixXcd dup = random_matrix(rng, 32, 3);
    dup.col(2) = 2.0 * dup.col(0);
    CHECK_THROWS_AS(avg_gain(AnalogBeamformer(dup), b), RankDeficient);
}

TEST_CASE("instantaneous gain")
{
    const BandSpec band(60e9, 9e9);
    const ArrayGeometry g = ArrayGeometry::in_wavelengths(8, 4, 0.5, band);
    const Direction dir = uv_from_angles(50, 65);
    oracle::Rng rng(13);

    const SteeringVector a = steering_vector(g, dir, band, 2e9);
    const AnalogBeamformer mf(a.channel() / std::sqrt(32.0));
    CHECK(instantaneous_gain(mf, a).gain == Approx(32.0).epsilon(1e-12));

    for (int trial = 0; trial < 20; ++trial)
    {
        const auto n_rf = static_cast<Eigen::Index>(rng.index(1, 5));
        const AnalogBeamformer w(random_matrix(rng, 32, n_rf));
        const SteeringVector af = steering_vector(g, dir, band, rng.uniform(-4.5e9, 4.5e9));
        const InstantaneousGain ig = instantaneous_gain(w, af);
        CHECK(ig.gain <= 32.0 * (1 + 1e-12));
        const Eigen::VectorXcd beam = w.matrix() * ig.digital_weights;
        CHECK(beam.norm() == Approx(1.0).epsilon(1e-12));
        CHECK(std::norm(beam.dot(af.channel())) == Approx(ig.gain).epsilon(1e-10));
        // Cauchy-Schwarz: no other digital weights do better.
        const Eigen::VectorXcd other = w.matrix() * random_matrix(rng, n_rf, 1);
        CHECK(std::norm(other.dot(af.channel())) / other.squaredNorm() <= ig.gain * (1 + 1e-12));
    }
}

TEST_CASE("block-diagonal pattern validation")
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 2);
    m(0, 0) = m(1, 0) = m(2, 1) = m(3, 1) = 1.0;
    const BlockPattern p{{0, 0, 1, 1}, {0, 1}};
    CHECK_NOTHROW(AnalogBeamformer(m, Architecture::block_diagonal, p));
    m(3, 0) = 0.5;
    CHECK_THROWS_AS(AnalogBeamformer(m, Architecture::block_diagonal, p), InvalidArgument);
    CHECK_THROWS_AS(AnalogBeamformer(m, Architecture::block_diagonal), InvalidArgument);
}
