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

#include "squint/architectures.hpp"

#include "squint/channel.hpp"
#include "squint/continuum.hpp"
#include "squint/errors.hpp"
#include "squint/linalg.hpp"
#include "squint/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace squint
{
    namespace
    {
        void require_unit_interval(double g, const char *what)
        {
            if (!(g >= 0.0 && g <= 1.0))
                throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
        }

        void require_positive_alpha(double alpha)
        {
            if (!(alpha > 0.0) || !std::isfinite(alpha))
                throw InvalidArgument("alpha must be positive and finite");
        }

        std::size_t frequency_nodes_or_default(std::size_t k_nodes, const SquintFactor &sf)
        {
            return k_nodes == 0 ? default_frequency_nodes(sf) : k_nodes;
        }

        // Beamspace frequencies after the duplicate-column guard.
        std::vector<double> guarded_frequencies(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                                std::size_t n_rf)
        {
            const SquintFactor sf = squint_factor(geom, dir, band);
            if (sf.is_broadside())
                throw InvalidArgument("beamspace beamformer is undefined at broadside");
            if (n_rf == 0)
                throw InvalidArgument("at least one RF chain is required");
            if (n_rf > geom.size())
                throw InvalidArgument("beamspace needs n_rf <= N for full column rank");

            std::vector<double> f = beamspace_frequencies(sf, band, n_rf);
            const double n = static_cast<double>(geom.size());
            const double step = band.bandwidth() / static_cast<double>(default_frequency_nodes(sf));
            for (std::size_t l = 1; l < f.size(); ++l)
            {
                bool clash = true;
                for (int attempt = 0; clash && attempt < 64; ++attempt)
                {
                    clash = false;
                    for (std::size_t j = 0; j < l; ++j)
                        if (std::abs(array_factor(geom, dir, f[l] - f[j])) >= n * (1.0 - 1e-12))
                            clash = true;
                    if (clash)
                        f[l] += step;
                }
            }
            return f;
        }
    }

    // ---------------------------------------------------------------- beamspace

    std::vector<double> beamspace_frequencies(const SquintFactor &sf, const BandSpec &band, std::size_t n_rf)
    {
        if (sf.is_broadside())
            throw InvalidArgument("beamspace frequencies are undefined at broadside");
        std::vector<double> f(n_rf);
        const double spacing = band.bandwidth() / sf.alpha_up;
        for (std::size_t l = 0; l < n_rf; ++l)
            f[l] = (static_cast<double>(l) - 0.5 * static_cast<double>(n_rf - 1)) * spacing;
        return f;
    }

    AnalogBeamformer beamspace_beamformer(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                          std::size_t n_rf)
    {
        const std::vector<double> f = guarded_frequencies(geom, dir, band, n_rf);
        Eigen::MatrixXcd w(static_cast<Eigen::Index>(geom.size()), static_cast<Eigen::Index>(n_rf));
        for (std::size_t l = 0; l < n_rf; ++l)
            w.col(static_cast<Eigen::Index>(l)) = steering_entries(geom, dir, band, f[l]).conjugate();
        return AnalogBeamformer(std::move(w), Architecture::beamspace);
    }

    double beamspace_avg_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                              std::size_t n_rf, std::size_t k_nodes)
    {
        const SquintFactor sf = squint_factor(geom, dir, band);
        const std::vector<double> f = guarded_frequencies(geom, dir, band, n_rf);
        const auto r = static_cast<Eigen::Index>(n_rf);

        Eigen::MatrixXcd gram(r, r);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j <= i; ++j)
                gram(i, j) = gram(j, i) =
                    array_factor(geom, dir, f[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(j)]);
        const linalg::GramSolver solver(gram);

        const quad::Rule rule = frequency_rule(band, frequency_nodes_or_default(k_nodes, sf));
        Eigen::VectorXcd c(r);
        double g_avg = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
        {
            for (Eigen::Index l = 0; l < r; ++l)
                c[l] = array_factor(geom, dir, f[static_cast<std::size_t>(l)] - rule.nodes[k]);
            g_avg += rule.weights[k] * std::max(0.0, solver.quadratic_form(c));
        }
        return g_avg / static_cast<double>(geom.size());
    }

    double reduced_band_gain(double band_fraction)
    {
        if (!(band_fraction > 0.0))
            throw InvalidArgument("band fraction must be positive");
        return 2.0 * quad::sinc_squared_primitive(0.5 * band_fraction);
    }

    // ---------------------------------------------------------------- hybrid / partial connectivity

    void HybridPartition::validate(const ArrayGeometry &geom) const
    {
        if (m_x == 0 || m_y == 0 || chains_per_subarray == 0)
            throw InvalidArgument("partition counts must be positive");
        if (geom.n_x() % m_x != 0 || geom.n_y() % m_y != 0)
            throw InvalidArgument("subarray grid must divide the array dimensions");
    }

    ArrayGeometry subarray_geometry(const ArrayGeometry &geom, const HybridPartition &part)
    {
        part.validate(geom);
        return ArrayGeometry(geom.n_x() / part.m_x, geom.n_y() / part.m_y, geom.d_x(), geom.d_y());
    }

    std::vector<std::size_t> subarray_elements(const ArrayGeometry &geom, const HybridPartition &part, std::size_t m)
    {
        part.validate(geom);
        if (m >= part.subarrays())
            throw InvalidArgument("subarray index out of range");
        const std::size_t sx = geom.n_x() / part.m_x;
        const std::size_t sy = geom.n_y() / part.m_y;
        const std::size_t mx = m / part.m_y;
        const std::size_t my = m % part.m_y;

        std::vector<std::size_t> out;
        out.reserve(sx * sy);
        for (std::size_t jx = 0; jx < sx; ++jx)
            for (std::size_t jy = 0; jy < sy; ++jy)
                out.push_back((mx * sx + jx) * geom.n_y() + (my * sy + jy));
        return out;
    }

    Position subarray_offset(const ArrayGeometry &geom, const HybridPartition &part, std::size_t m)
    {
        part.validate(geom);
        const std::size_t sx = geom.n_x() / part.m_x;
        const std::size_t sy = geom.n_y() / part.m_y;
        const auto mx = static_cast<double>(m / part.m_y);
        const auto my = static_cast<double>(m % part.m_y);
        return {mx * static_cast<double>(sx) * geom.d_x(), my * static_cast<double>(sy) * geom.d_y()};
    }

    AnalogBeamformer assemble_block_diagonal(const ArrayGeometry &geom, const HybridPartition &part,
                                             std::span<const Eigen::MatrixXcd> subarray_beamformers)
    {
        part.validate(geom);
        if (subarray_beamformers.size() != part.subarrays())
            throw InvalidArgument("expected one beamformer per subarray");
        const std::size_t sub_n = geom.size() / part.subarrays();

        Eigen::Index cols = 0;
        for (const auto &w : subarray_beamformers)
        {
            if (static_cast<std::size_t>(w.rows()) != sub_n)
                throw InvalidArgument("subarray beamformer row count does not match the subarray size");
            if (static_cast<std::size_t>(w.cols()) != part.chains_per_subarray)
                throw InvalidArgument("subarray beamformer column count does not match chains_per_subarray");
            cols += w.cols();
        }

        Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(geom.size()), cols);
        BlockPattern pattern;
        pattern.row_block.resize(geom.size());
        Eigen::Index col = 0;
        for (std::size_t m = 0; m < part.subarrays(); ++m)
        {
            const auto rows = subarray_elements(geom, part, m);
            const auto &w = subarray_beamformers[m];
            for (std::size_t i = 0; i < rows.size(); ++i)
            {
                full.row(static_cast<Eigen::Index>(rows[i])).segment(col, w.cols()) = w.row(static_cast<Eigen::Index>(i));
                pattern.row_block[rows[i]] = m;
            }
            for (Eigen::Index j = 0; j < w.cols(); ++j)
                pattern.col_block.push_back(m);
            col += w.cols();
        }
        return AnalogBeamformer(std::move(full), Architecture::block_diagonal, std::move(pattern));
    }

    double hybrid_partition_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                 const HybridPartition &part, std::span<const Eigen::MatrixXcd> subarray_beamformers)
    {
        part.validate(geom);
        if (subarray_beamformers.size() != part.subarrays())
            throw InvalidArgument("expected one beamformer per subarray");

        const auto positions = element_positions(geom);
        double total = 0.0;
        for (std::size_t m = 0; m < part.subarrays(); ++m)
        {
            const auto rows = subarray_elements(geom, part, m);
            if (static_cast<std::size_t>(subarray_beamformers[m].cols()) != part.chains_per_subarray)
                throw InvalidArgument("subarray beamformer column count does not match chains_per_subarray");
            std::vector<Position> sub;
            sub.reserve(rows.size());
            for (std::size_t r : rows)
                sub.push_back(positions[r]);
            total += avg_gain(AnalogBeamformer(subarray_beamformers[m]), correlation_matrix(sub, dir, band));
        }
        return total;
    }

    double hybrid_optimal_gain(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                               const HybridPartition &part, std::size_t k_nodes)
    {
        const ArrayGeometry sub = subarray_geometry(geom, part);
        const SquintFactor sf = squint_factor(sub, dir, band);
        const std::size_t k = frequency_nodes_or_default(k_nodes, sf);
        if (sf.is_broadside())
            return 1.0;
        const SpectrumResult spectrum = spectrum_gram(sub, dir, band, std::max(k, part.chains_per_subarray));
        return spectrum.partial_sum(part.chains_per_subarray) / static_cast<double>(sub.size());
    }

    std::size_t hybridly_required_chains(const HybridPartition &part, const SquintFactor &sf)
    {
        if (part.m_x == 0 || part.m_y == 0)
            throw InvalidArgument("partition counts must be positive");
        const double need = static_cast<double>(part.m_y) * std::abs(sf.alpha_x) +
                            static_cast<double>(part.m_x) * std::abs(sf.alpha_y);
        return std::max<std::size_t>(1, ceil_count(need));
    }

    double partial_mrt_gain(double alpha, std::size_t m)
    {
        require_positive_alpha(alpha);
        if (m == 0)
            throw InvalidArgument("at least one subarray is required");
        const double mm = static_cast<double>(m);
        const double x = std::numbers::pi * alpha / mm;
        const double half = 0.5 * x;
        const double s = std::sin(half);
        return (2.0 * mm / (std::numbers::pi * alpha)) * (quad::sine_integral(x) - s * s / half);
    }

    double partial_optimal_gain(double alpha, std::size_t m, std::size_t n_nodes)
    {
        require_positive_alpha(alpha);
        if (m == 0)
            throw InvalidArgument("at least one subarray is required");
        const double per_subarray = alpha / static_cast<double>(m);
        const std::size_t nodes = n_nodes == 0 ? default_kernel_nodes(per_subarray) : n_nodes;
        return ula_kernel_spectrum(per_subarray, nodes).eigenvalues[0] / per_subarray;
    }

    Eigen::VectorXcd delay_line_weights(const ArrayGeometry &geom, const HybridPartition &part,
                                        const Direction &dir, const BandSpec &band, double f_rel)
    {
        part.validate(geom);
        if (part.chains_per_subarray != 1)
            throw InvalidArgument("delay-line combining needs identical single-chain subarrays");
        if (!band.contains(f_rel))
            throw InvalidArgument("relative frequency lies outside the band");

        const double k = 2.0 * std::numbers::pi * (band.carrier() + f_rel) / kSpeedOfLight;
        Eigen::VectorXcd w(static_cast<Eigen::Index>(part.subarrays()));
        for (std::size_t m = 0; m < part.subarrays(); ++m)
        {
            const Position off = subarray_offset(geom, part, m);
            w[static_cast<Eigen::Index>(m)] = std::polar(1.0, -k * (dir.u_x() * off.x + dir.u_y() * off.y));
        }
        return w;
    }

    // ---------------------------------------------------------------- gain product bounds

    double separable_gain_bound(double gx_norm, double gy_norm)
    {
        require_unit_interval(gx_norm, "normalized x gain");
        require_unit_interval(gy_norm, "normalized y gain");
        return std::min(gx_norm, gy_norm);
    }

    MultiGainBounds multi_gain_bounds(double gt_norm, double gr_norm)
    {
        require_unit_interval(gt_norm, "normalized transmit gain");
        require_unit_interval(gr_norm, "normalized receive gain");
        return {std::max(gt_norm + gr_norm - 1.0, 0.0), std::min(gt_norm, gr_norm)};
    }

    double profile_product_average(const IndicatorProfile &a, const IndicatorProfile &b)
    {
        return std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
    }

    ExtremalProfiles maximizing_profiles(double g1_norm, double g2_norm)
    {
        require_unit_interval(g1_norm, "normalized gain");
        require_unit_interval(g2_norm, "normalized gain");
        return {{0.0, g1_norm}, {0.0, g2_norm}};
    }

    ExtremalProfiles minimizing_profiles(double g1_norm, double g2_norm)
    {
        require_unit_interval(g1_norm, "normalized gain");
        require_unit_interval(g2_norm, "normalized gain");
        return {{0.0, g1_norm}, {1.0 - g2_norm, 1.0}};
    }
}
