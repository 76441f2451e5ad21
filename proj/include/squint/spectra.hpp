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

#ifndef SQUINT_SPECTRA_HPP
#define SQUINT_SPECTRA_HPP

#include "squint/channel.hpp"
#include "squint/geometry.hpp"
#include "squint/quadrature.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace squint
{
    inline constexpr std::size_t kDenseCap = 4096;

    // Bandwidth-averaged correlation B = (1/W) int a(f) a^*(f) df, carrier phase included:
    //   B(n', n) = exp(j 2 pi f_c u^T (r_n - r_n') / c) * sinc(W u^T (r_n - r_n') / c).
    // |B(n', n)| is the plain sinc form; the carrier factor is a diagonal unitary similarity and
    // leaves the eigenvalues unchanged.
    struct CorrelationMatrix
    {
        Eigen::MatrixXcd entries;

        std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
    };

    CorrelationMatrix correlation_matrix(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                         std::size_t cap = kDenseCap);

    // Correlation over an arbitrary element subset (e.g. one subarray), positions in meters.
    CorrelationMatrix correlation_matrix(std::span<const Position> positions, const Direction &dir,
                                         const BandSpec &band, std::size_t cap = kDenseCap);

    struct SpectrumResult
    {
        Eigen::VectorXd eigenvalues;                 // nonincreasing, clipped at 0
        std::optional<Eigen::MatrixXcd> eigenvectors; // orthonormal columns, one per leading eigenvalue

        // Sum of the n largest eigenvalues (all of them if n exceeds the count).
        double partial_sum(std::size_t n) const;
    };

    SpectrumResult spectrum_dense(const CorrelationMatrix &b, bool want_vectors);

    // max(64, 8 ceil(alpha_up)) Gauss-Legendre frequency nodes.
    std::size_t default_frequency_nodes(const SquintFactor &sf);

    // Gauss-Legendre nodes on [-W/2, W/2] with weights divided by W (they sum to 1).
    quad::Rule frequency_rule(const BandSpec &band, std::size_t k_nodes);

    // Leading spectrum of the k-node quadrature approximation B_k = sum_k q_k a(f_k) a^*(f_k),
    // obtained from the k x k weighted Gram matrix of steering vectors, so the N x N matrix is
    // never formed. Eigenvectors, when requested, are rebuilt as weighted steering combinations
    // for every eigenvalue above 1e-12 of the largest.
    SpectrumResult spectrum_gram(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                 std::size_t k_nodes, bool want_vectors = false);

    enum class Architecture
    {
        full,
        beamspace,
        block_diagonal,
    };

    // Row/column block membership for block-diagonal beamformers.
    struct BlockPattern
    {
        std::vector<std::size_t> row_block;
        std::vector<std::size_t> col_block;
    };

    class AnalogBeamformer
    {
    public:
        // Throws InvalidArgument if a block-diagonal matrix has nonzeros outside its pattern.
        explicit AnalogBeamformer(Eigen::MatrixXcd matrix, Architecture architecture = Architecture::full,
                                  std::optional<BlockPattern> pattern = std::nullopt);

        const Eigen::MatrixXcd &matrix() const { return matrix_; }
        Architecture architecture() const { return architecture_; }
        const std::optional<BlockPattern> &pattern() const { return pattern_; }
        std::size_t rf_chains() const { return static_cast<std::size_t>(matrix_.cols()); }
        std::size_t elements() const { return static_cast<std::size_t>(matrix_.rows()); }

    private:
        Eigen::MatrixXcd matrix_;
        Architecture architecture_;
        std::optional<BlockPattern> pattern_;
    };

    // Top n_rf eigenvectors; g_avg equals the n_rf-term eigenvalue partial sum.
    AnalogBeamformer optimal_analog_beamformer(const SpectrumResult &spectrum, std::size_t n_rf);

    // tr(W (W^* W)^-1 W^* B). Throws RankDeficient.
    double avg_gain(const AnalogBeamformer &w_a, const CorrelationMatrix &b);

    // Same quantity with B replaced by its k-node quadrature, via steering vectors at the nodes.
    double avg_gain(const AnalogBeamformer &w_a, const ArrayGeometry &geom, const Direction &dir,
                    const BandSpec &band, std::size_t k_nodes);

    struct InstantaneousGain
    {
        double gain = 0.0;
        Eigen::VectorXcd digital_weights; // unit transmit power: ||W_a w_d|| = 1
    };

    // Best gain with a per-frequency digital stage, ||(W^* W)^(-1/2) W^* a(f)||^2, and weights
    // attaining it.
    InstantaneousGain instantaneous_gain(const AnalogBeamformer &w_a, const SteeringVector &a_f);

    struct GainProfile
    {
        std::vector<double> grid;    // relative frequency nodes [Hz]
        std::vector<double> weights; // quadrature weights normalized to sum to 1
        std::vector<double> gains;
        double g_avg = 0.0;
    };

    GainProfile gain_profile(const AnalogBeamformer &w_a, const ArrayGeometry &geom, const Direction &dir,
                             const BandSpec &band, std::size_t k_nodes);
}

#endif
