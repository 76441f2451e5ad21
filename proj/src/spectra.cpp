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

#include "squint/spectra.hpp"

#include "squint/errors.hpp"
#include "squint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace squint
{
    namespace
    {
        double sinc(double x)
        {
            if (std::abs(x) < 1e-8)
                return 1.0 - std::pow(std::numbers::pi * x, 2) / 6.0;
            return std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
        }

        Eigen::VectorXd clipped(const Eigen::VectorXd &v)
        {
            return v.cwiseMax(0.0);
        }

        // Columns W^H a(f) for a(f) = conj(steering entries).
        Eigen::VectorXcd analog_response(const AnalogBeamformer &w_a, const Eigen::VectorXcd &entries)
        {
            return w_a.matrix().adjoint() * entries.conjugate();
        }

        void require_nodes(std::size_t k_nodes)
        {
            if (k_nodes < 2)
                throw InvalidArgument("frequency quadrature needs at least 2 nodes");
        }
    }

    CorrelationMatrix correlation_matrix(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                         std::size_t cap)
    {
        if (geom.size() > cap)
            throw SizeError(geom.size(), cap);
        const auto positions = element_positions(geom);
        return correlation_matrix(positions, dir, band, cap);
    }

    CorrelationMatrix correlation_matrix(std::span<const Position> positions, const Direction &dir,
                                         const BandSpec &band, std::size_t cap)
    {
        const std::size_t n = positions.size();
        if (n > cap)
            throw SizeError(n, cap);

        // Projected positions u^T r_n / c in seconds.
        std::vector<double> delay(n);
        for (std::size_t i = 0; i < n; ++i)
            delay[i] = (dir.u_x() * positions[i].x + dir.u_y() * positions[i].y) / kSpeedOfLight;

        const double two_pi_fc = 2.0 * std::numbers::pi * band.carrier();
        CorrelationMatrix b;
        b.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t col = 0; col < n; ++col)
        {
            for (std::size_t row = 0; row <= col; ++row)
            {
                const double tau = delay[col] - delay[row];
                const std::complex<double> value = std::polar(sinc(band.bandwidth() * tau), two_pi_fc * tau);
                b.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = value;
                b.entries(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(row)) = std::conj(value);
            }
        }
        return b;
    }

    double SpectrumResult::partial_sum(std::size_t n) const
    {
        const auto count = std::min<Eigen::Index>(static_cast<Eigen::Index>(n), eigenvalues.size());
        return eigenvalues.head(count).sum();
    }

    SpectrumResult spectrum_dense(const CorrelationMatrix &b, bool want_vectors)
    {
        auto eig = linalg::hermitian_eigen(b.entries, want_vectors);
        return SpectrumResult{clipped(eig.values), std::move(eig.vectors)};
    }

    std::size_t default_frequency_nodes(const SquintFactor &sf)
    {
        return std::max<std::size_t>(64, 8 * ceil_count(sf.alpha_up));
    }

    quad::Rule frequency_rule(const BandSpec &band, std::size_t k_nodes)
    {
        require_nodes(k_nodes);
        const double half = 0.5 * band.bandwidth();
        quad::Rule rule = quad::gauss_legendre(k_nodes, -half, half);
        for (double &w : rule.weights)
            w /= band.bandwidth();
        return rule;
    }

    SpectrumResult spectrum_gram(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                 std::size_t k_nodes, bool want_vectors)
    {
        const quad::Rule rule = frequency_rule(band, k_nodes);
        const auto k = static_cast<Eigen::Index>(k_nodes);

        Eigen::VectorXd root_w(k);
        for (Eigen::Index i = 0; i < k; ++i)
            root_w[i] = std::sqrt(rule.weights[static_cast<std::size_t>(i)]);

        // a^*(f_i) a(f_j) is real for centered arrays, so the Gram matrix is real symmetric.
        Eigen::MatrixXd gram(k, k);
        for (Eigen::Index j = 0; j < k; ++j)
            for (Eigen::Index i = 0; i <= j; ++i)
            {
                const double df = rule.nodes[static_cast<std::size_t>(i)] - rule.nodes[static_cast<std::size_t>(j)];
                gram(i, j) = gram(j, i) = root_w[i] * root_w[j] * array_factor(geom, dir, df);
            }

        auto eig = linalg::symmetric_eigen(std::move(gram), want_vectors);
        SpectrumResult out;
        out.eigenvalues = clipped(eig.values);
        if (!want_vectors)
            return out;

        const double floor = 1e-12 * std::max(out.eigenvalues[0], 1e-300);
        Eigen::Index usable = 0;
        while (usable < out.eigenvalues.size() && out.eigenvalues[usable] > floor)
            ++usable;

        // u_l = sum_j a(f_j) sqrt(q_j) v_jl / sqrt(mu_l)
        const auto n = static_cast<Eigen::Index>(geom.size());
        Eigen::MatrixXcd steer(n, k);
        for (Eigen::Index j = 0; j < k; ++j)
            steer.col(j) = steering_entries(geom, dir, band, rule.nodes[static_cast<std::size_t>(j)]).conjugate() *
                           root_w[j];
        Eigen::MatrixXcd vectors = steer * eig.vectors->leftCols(usable).cast<std::complex<double>>();
        for (Eigen::Index l = 0; l < usable; ++l)
            vectors.col(l) /= std::sqrt(out.eigenvalues[l]);
        out.eigenvectors = std::move(vectors);
        return out;
    }

    AnalogBeamformer::AnalogBeamformer(Eigen::MatrixXcd matrix, Architecture architecture,
                                       std::optional<BlockPattern> pattern)
        : matrix_(std::move(matrix)), architecture_(architecture), pattern_(std::move(pattern))
    {
        if (matrix_.cols() == 0 || matrix_.rows() == 0)
            throw InvalidArgument("analog beamformer must have at least one row and one column");
        if (architecture_ == Architecture::block_diagonal && !pattern_)
            throw InvalidArgument("block-diagonal beamformer needs a block pattern");
        if (!pattern_)
            return;

        const auto &p = *pattern_;
        if (p.row_block.size() != elements() || p.col_block.size() != rf_chains())
            throw InvalidArgument("block pattern does not match the beamformer shape");
        for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
            for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
                if (p.row_block[static_cast<std::size_t>(i)] != p.col_block[static_cast<std::size_t>(j)] &&
                    matrix_(i, j) != std::complex<double>(0.0, 0.0))
                    throw InvalidArgument("block-diagonal beamformer has a nonzero outside its partition (row " +
                                          std::to_string(i) + ", column " + std::to_string(j) + ")");
    }

    AnalogBeamformer optimal_analog_beamformer(const SpectrumResult &spectrum, std::size_t n_rf)
    {
        if (!spectrum.eigenvectors)
            throw InvalidArgument("optimal beamformer needs a spectrum computed with eigenvectors");
        if (n_rf == 0)
            throw InvalidArgument("at least one RF chain is required");
        const auto available = static_cast<std::size_t>(spectrum.eigenvectors->cols());
        if (n_rf > available)
            throw InvalidArgument("requested " + std::to_string(n_rf) + " RF chains but only " +
                                  std::to_string(available) + " eigenvectors are available");
        return AnalogBeamformer(spectrum.eigenvectors->leftCols(static_cast<Eigen::Index>(n_rf)));
    }

    double avg_gain(const AnalogBeamformer &w_a, const CorrelationMatrix &b)
    {
        if (w_a.elements() != b.size())
            throw InvalidArgument("beamformer and correlation matrix sizes differ");
        const auto &w = w_a.matrix();
        const linalg::GramSolver gram(w.adjoint() * w);
        const Eigen::MatrixXcd projected = w.adjoint() * b.entries * w;
        double trace = 0.0;
        for (Eigen::Index j = 0; j < projected.cols(); ++j)
            trace += gram.solve(projected.col(j))[j].real();
        return trace;
    }

    double avg_gain(const AnalogBeamformer &w_a, const ArrayGeometry &geom, const Direction &dir,
                    const BandSpec &band, std::size_t k_nodes)
    {
        return gain_profile(w_a, geom, dir, band, k_nodes).g_avg;
    }

    InstantaneousGain instantaneous_gain(const AnalogBeamformer &w_a, const SteeringVector &a_f)
    {
        if (static_cast<std::size_t>(a_f.entries.size()) != w_a.elements())
            throw InvalidArgument("steering vector and beamformer sizes differ");
        const auto &w = w_a.matrix();
        const Eigen::MatrixXcd g = w.adjoint() * w;
        const linalg::GramSolver gram(g);
        const Eigen::VectorXcd c = analog_response(w_a, a_f.entries);

        InstantaneousGain out;
        out.gain = std::max(0.0, gram.quadratic_form(c));
        Eigen::VectorXcd wd = gram.solve(c);
        const double power = wd.dot(g * wd).real();
        if (power > 0.0)
            out.digital_weights = wd / std::sqrt(power);
        else
            out.digital_weights = gram.inverse_sqrt().col(0);
        return out;
    }

    GainProfile gain_profile(const AnalogBeamformer &w_a, const ArrayGeometry &geom, const Direction &dir,
                             const BandSpec &band, std::size_t k_nodes)
    {
        if (w_a.elements() != geom.size())
            throw InvalidArgument("beamformer and array sizes differ");
        const quad::Rule rule = frequency_rule(band, k_nodes);
        const auto &w = w_a.matrix();
        const linalg::GramSolver gram(w.adjoint() * w);

        GainProfile out;
        out.grid = rule.nodes;
        out.weights = rule.weights;
        out.gains.reserve(rule.size());
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            const Eigen::VectorXcd c = analog_response(w_a, steering_entries(geom, dir, band, rule.nodes[i]));
            const double g = std::max(0.0, gram.quadratic_form(c));
            out.gains.push_back(g);
            out.g_avg += rule.weights[i] * g;
        }
        return out;
    }
}
