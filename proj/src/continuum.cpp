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

#include "squint/continuum.hpp"

#include "squint/errors.hpp"
#include "squint/linalg.hpp"
#include "squint/quadrature.hpp"
#include "squint/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace squint
{
    namespace
    {
        constexpr std::size_t kMinNodes = 8;

        // sin(pi a d) / (pi d), equal to a at d = 0.
        double sinc_kernel(double alpha, double d)
        {
            const double x = std::numbers::pi * alpha * d;
            if (std::abs(x) < 1e-8)
                return alpha * (1.0 - x * x / 6.0);
            return std::sin(x) / (std::numbers::pi * d);
        }

        // Eigenvalues of the Nystrom matrix sqrt(m_i) K(x_i, x_j) sqrt(m_j), where m are the
        // quadrature masses of the (possibly weighted) measure.
        Eigen::VectorXd nystrom_eigenvalues(double alpha, const std::vector<double> &nodes,
                                            const std::vector<double> &mass)
        {
            const auto n = static_cast<Eigen::Index>(nodes.size());
            Eigen::VectorXd root(n);
            for (Eigen::Index i = 0; i < n; ++i)
                root[i] = std::sqrt(mass[static_cast<std::size_t>(i)]);

            Eigen::MatrixXd a(n, n);
            for (Eigen::Index j = 0; j < n; ++j)
                for (Eigen::Index i = 0; i <= j; ++i)
                    a(i, j) = a(j, i) = root[i] * root[j] *
                                        sinc_kernel(alpha, nodes[static_cast<std::size_t>(i)] -
                                                               nodes[static_cast<std::size_t>(j)]);
            return linalg::symmetric_eigen(std::move(a), false).values;
        }

        Eigen::VectorXd clip_unit(const Eigen::VectorXd &v)
        {
            return v.cwiseMax(0.0).cwiseMin(1.0 + 1e-9);
        }

        void require_positive_alpha(double alpha)
        {
            if (!(alpha > 0.0) || !std::isfinite(alpha))
                throw InvalidArgument("alpha must be positive and finite");
        }

        void require_nodes(std::size_t n_nodes)
        {
            if (n_nodes < kMinNodes)
                throw InvalidArgument("kernel quadrature needs at least 8 nodes");
        }

        double eigenvalue_or_zero(const Eigen::VectorXd &values, std::size_t ell)
        {
            return static_cast<Eigen::Index>(ell) < values.size() ? values[static_cast<Eigen::Index>(ell)] : 0.0;
        }
    }

    std::size_t default_kernel_nodes(double alpha)
    {
        return 50 + 10 * ceil_count(std::abs(alpha));
    }

    Eigen::VectorXd ula_kernel_eigenvalues_raw(double alpha, std::size_t n_nodes)
    {
        require_positive_alpha(alpha);
        require_nodes(n_nodes);
        const quad::Rule rule = quad::gauss_legendre(n_nodes, -0.5, 0.5);
        return nystrom_eigenvalues(alpha, rule.nodes, rule.weights);
    }

    KernelSpectrum ula_kernel_spectrum(double alpha, std::size_t n_nodes)
    {
        KernelSpectrum out;
        out.alpha_x = alpha;
        out.alpha = alpha;
        out.eigenvalues = clip_unit(ula_kernel_eigenvalues_raw(alpha, n_nodes));
        out.nodes = n_nodes;
        return out;
    }

    std::size_t polarization_count(const KernelSpectrum &spectrum, double epsilon)
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw InvalidArgument("epsilon must lie in (0, 1)");
        return static_cast<std::size_t>((spectrum.eigenvalues.array() > epsilon).count());
    }

    double WeightProfile::operator()(double x) const
    {
        if (x <= points[0].x || x >= points[3].x)
            return 0.0;
        for (std::size_t i = 0; i < 3; ++i)
        {
            const auto &p = points[i];
            const auto &q = points[i + 1];
            if (x <= q.x)
            {
                if (q.x == p.x)
                    return q.value;
                return p.value + (q.value - p.value) * (x - p.x) / (q.x - p.x);
            }
        }
        return 0.0;
    }

    double WeightProfile::area() const
    {
        double total = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            total += 0.5 * (points[i].value + points[i + 1].value) * (points[i + 1].x - points[i].x);
        return total;
    }

    WeightProfile upa_weight_profile(const SquintFactor &sf)
    {
        if (!sf.shape)
            throw InvalidArgument("weight profile is undefined at broadside");
        const auto &s = *sf.shape;
        WeightProfile w;
        w.points = {{{-0.5 * s.l1, 0.0}, {-0.5 * s.l2, s.l3}, {0.5 * s.l2, s.l3}, {0.5 * s.l1, 0.0}}};
        return w;
    }

    KernelSpectrum upa_reduced_spectrum(const SquintFactor &sf, std::size_t n_nodes)
    {
        require_nodes(n_nodes);
        const WeightProfile w = upa_weight_profile(sf);
        const auto &s = *sf.shape;

        std::vector<double> nodes;
        std::vector<double> mass;
        for (std::size_t i = 0; i < 3; ++i)
        {
            const double lo = w.points[i].x;
            const double hi = w.points[i + 1].x;
            const double len = hi - lo;
            if (!(len > 1e-14 * s.l1))
                continue;
            const auto count = std::max<std::size_t>(
                kMinNodes, static_cast<std::size_t>(std::lround(static_cast<double>(n_nodes) * len / s.l1)));
            const quad::Rule piece = quad::gauss_legendre(count, lo, hi);
            for (std::size_t k = 0; k < piece.size(); ++k)
            {
                nodes.push_back(piece.nodes[k]);
                mass.push_back(piece.weights[k] * w(piece.nodes[k]));
            }
        }

        KernelSpectrum out;
        out.alpha_x = sf.alpha_x;
        out.alpha_y = sf.alpha_y;
        out.alpha = sf.norm;
        out.eigenvalues = nystrom_eigenvalues(sf.norm, nodes, mass).cwiseMax(0.0);
        out.nodes = nodes.size();
        return out;
    }

    SandwichBounds sandwich_bounds(const SquintFactor &sf, double delta, std::size_t ell, std::size_t n_nodes)
    {
        if (!(delta >= 0.0 && delta <= 1.0))
            throw InvalidArgument("delta must lie in [0, 1]");
        if (!sf.shape)
            throw InvalidArgument("sandwich bounds are undefined at broadside");
        const double l3 = sf.shape->l3;

        SandwichBounds out;
        out.upper = l3 * eigenvalue_or_zero(ula_kernel_spectrum(sf.alpha_up, n_nodes).eigenvalues, ell);
        const double lo = sf.alpha_lo(delta);
        if (delta > 0.0 && lo > 0.0)
            out.lower = delta * l3 * eigenvalue_or_zero(ula_kernel_spectrum(lo, n_nodes).eigenvalues, ell);
        return out;
    }

    double discretization_error(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                std::size_t n_nodes)
    {
        const SquintFactor sf = squint_factor(geom, dir, band);
        if (sf.is_broadside())
            throw InvalidArgument("discretization error is undefined at broadside");

        const SpectrumResult discrete = spectrum_dense(correlation_matrix(geom, dir, band), false);
        const KernelSpectrum continuous = sf.alpha_y == 0.0 ? ula_kernel_spectrum(std::abs(sf.alpha_x), n_nodes)
                                                            : upa_reduced_spectrum(sf, n_nodes);

        const double scale = sf.norm / static_cast<double>(geom.size());
        const auto count = std::max(discrete.eigenvalues.size(), continuous.eigenvalues.size());
        double num = 0.0;
        double den = 0.0;
        for (Eigen::Index l = 0; l < count; ++l)
        {
            const double d = l < discrete.eigenvalues.size() ? scale * discrete.eigenvalues[l] : 0.0;
            const double c = l < continuous.eigenvalues.size() ? continuous.eigenvalues[l] : 0.0;
            num += (d - c) * (d - c);
            den += c * c;
        }
        return num / den;
    }

    double beamspace_limit_gain(double alpha, std::size_t n_rf)
    {
        require_positive_alpha(alpha);
        if (n_rf == 0)
            return 0.0;

        const auto f = [](double t) { return quad::sinc_squared(t); };
        double total = 0.0;
        for (std::size_t l = 0; l < n_rf; ++l)
        {
            const double center = static_cast<double>(l) - 0.5 * static_cast<double>(n_rf - 1);
            const double lo = center - 0.5 * alpha;
            const double hi = center + 0.5 * alpha;
            // Panels between consecutive integers keep each piece free of interior zeros.
            double a = lo;
            while (a < hi)
            {
                const double b = std::min(hi, std::floor(a) + 1.0);
                total += quad::adaptive(f, a, b, 1e-13, 1e-16);
                a = b;
            }
        }
        return total / alpha;
    }
}
