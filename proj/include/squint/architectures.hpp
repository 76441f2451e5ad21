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

#ifndef SQUINT_ARCHITECTURES_HPP
#define SQUINT_ARCHITECTURES_HPP

#include "squint/geometry.hpp"
#include "squint/spectra.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace squint
{
    // ---------------------------------------------------------------- beamspace

    // Relative frequencies f_l = (l - (n_rf - 1)/2) W / alpha_up of the beamspace columns.
    // alpha_up reduces to |alpha_x| for a ULA.
    std::vector<double> beamspace_frequencies(const SquintFactor &sf, const BandSpec &band, std::size_t n_rf);

    // Columns a(f_l), unnormalized. Rejects broadside (zero spacing denominator) and n_rf > N.
    // A column that coincides with an earlier one is moved by one frequency-quadrature step.
    AnalogBeamformer beamspace_beamformer(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                          std::size_t n_rf);

    // g_avg / N of the beamspace beamformer, from closed-form steering inner products:
    // the analog Gram matrix G(l, l') = a^*(f_l) a(f_l') and responses c_l(f) = a^*(f_l) a(f) enter
    // g(f) = c^T G^-1 c, averaged with k_nodes Gauss-Legendre nodes (0 selects the default).
    double beamspace_avg_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                              std::size_t n_rf, std::size_t k_nodes = 0);

    // int_{-b/2}^{b/2} sinc^2(t) dt: beamspace gain when each chain processes b W / alpha.
    double reduced_band_gain(double band_fraction);

    // ---------------------------------------------------------------- hybrid / partial connectivity

    // m_x * m_y equal subarrays, each wired to chains_per_subarray RF chains.
    struct HybridPartition
    {
        std::size_t m_x = 1;
        std::size_t m_y = 1;
        std::size_t chains_per_subarray = 1;

        std::size_t subarrays() const { return m_x * m_y; }
        std::size_t total_chains() const { return subarrays() * chains_per_subarray; }

        // Throws InvalidArgument unless m_x | n_x, m_y | n_y and all counts are positive.
        void validate(const ArrayGeometry &geom) const;
    };

    // Geometry of one subarray (same spacing, n_x / m_x by n_y / m_y elements).
    ArrayGeometry subarray_geometry(const ArrayGeometry &geom, const HybridPartition &part);

    // Global element indices of subarray m (m = mx * m_y + my), in subarray-local order.
    std::vector<std::size_t> subarray_elements(const ArrayGeometry &geom, const HybridPartition &part,
                                               std::size_t m);

    // Displacement of subarray m relative to subarray 0 [m].
    Position subarray_offset(const ArrayGeometry &geom, const HybridPartition &part, std::size_t m);

    // blkdiag(W_0, ..., W_{M-1}) in global element order, tagged block_diagonal.
    AnalogBeamformer assemble_block_diagonal(const ArrayGeometry &geom, const HybridPartition &part,
                                             std::span<const Eigen::MatrixXcd> subarray_beamformers);

    // sum_m g_avg,m with g_avg,m the trace-formula gain of subarray m against its own correlation.
    double hybrid_partition_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                 const HybridPartition &part, std::span<const Eigen::MatrixXcd> subarray_beamformers);

    // Normalized g_avg / N when every subarray uses its own top-eigenvector beamformer. Subarray
    // correlations depend only on element differences, so one Gram spectrum serves all subarrays.
    double hybrid_optimal_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                               const HybridPartition &part, std::size_t k_nodes = 0);

    // ceil(m_y |alpha_x| + m_x |alpha_y|), at least one.
    std::size_t hybridly_required_chains(const HybridPartition &part, const SquintFactor &sf);

    // Dense-array limit of M identical MRT subarrays:
    // (2M / (pi alpha)) (Si(pi alpha / M) - sin^2(pi alpha / 2M) / (pi alpha / 2M)).
    double partial_mrt_gain(double alpha, std::size_t m);

    // Dense-array limit with optimal subarray beamformers: lambda_0(B_{alpha/M}) M / alpha.
    double partial_optimal_gain(double alpha, std::size_t m, std::size_t n_nodes = 0);

    // Per-subarray phases exp(-j 2 pi (f_c + f) u^T rbar_m / c) that let a single RF chain behind
    // delay lines match M separate chains. Requires chains_per_subarray = 1.
    Eigen::VectorXcd delay_line_weights(const ArrayGeometry &geom, const HybridPartition &part,
                                        const Direction &dir, const BandSpec &band, double f_rel);

    // ---------------------------------------------------------------- gain product bounds

    double separable_gain_bound(double gx_norm, double gy_norm);

    struct MultiGainBounds
    {
        double lower = 0.0;
        double upper = 0.0;
    };

    // (max(g_t + g_r - 1, 0), min(g_t, g_r)) for normalized per-side average gains.
    MultiGainBounds multi_gain_bounds(double gt_norm, double gr_norm);

    // Indicator [lo <= t <= hi] on the normalized band t in [0, 1].
    struct IndicatorProfile
    {
        double lo = 0.0;
        double hi = 0.0;

        double mean() const { return hi - lo; }
    };

    // int_0^1 of the product of two indicators (their overlap length).
    double profile_product_average(const IndicatorProfile &a, const IndicatorProfile &b);

    struct ExtremalProfiles
    {
        IndicatorProfile first;
        IndicatorProfile second;
    };

    // Profiles with the given means whose product average equals the upper bound min(g_1, g_2)...
    ExtremalProfiles maximizing_profiles(double g1_norm, double g2_norm);
    // ...and the lower bound max(g_1 + g_2 - 1, 0).
    ExtremalProfiles minimizing_profiles(double g1_norm, double g2_norm);
}

#endif
