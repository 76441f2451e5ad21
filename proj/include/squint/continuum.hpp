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

#ifndef SQUINT_CONTINUUM_HPP
#define SQUINT_CONTINUUM_HPP

#include "squint/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>

namespace squint
{
    // Eigenvalues of a sinc-kernel integral operator on the normalized aperture.
    struct KernelSpectrum
    {
        double alpha_x = 0.0;
        double alpha_y = 0.0;
        double alpha = 0.0;         // |alpha|; the operator trace
        Eigen::VectorXd eigenvalues; // nonincreasing
        std::size_t nodes = 0;       // quadrature nodes used
    };

    // 50 + 10 ceil(alpha) nodes.
    std::size_t default_kernel_nodes(double alpha);

    // Nystrom eigenvalues of sin(pi alpha (r - r')) / (pi (r - r')) on [-1/2, 1/2]^2 with
    // Gauss-Legendre nodes and symmetric weighting. Clipped to [0, 1 + 1e-9].
    KernelSpectrum ula_kernel_spectrum(double alpha, std::size_t n_nodes);

    // Same, without the final clipping, for range checks.
    Eigen::VectorXd ula_kernel_eigenvalues_raw(double alpha, std::size_t n_nodes);

    // Number of eigenvalues above epsilon in (0, 1).
    std::size_t polarization_count(const KernelSpectrum &spectrum, double epsilon = 0.5);

    // Chord length of the unit square along the direction orthogonal to alpha, as a function of
    // the coordinate along alpha / |alpha|: a trapezoid through (-l1/2, 0), (-l2/2, l3),
    // (l2/2, l3), (l1/2, 0).
    struct WeightProfile
    {
        struct Point
        {
            double x;
            double value;
        };
        std::array<Point, 4> points;

        double operator()(double x) const;
        double area() const;
    };

    WeightProfile upa_weight_profile(const SquintFactor &sf);

    // Planar operator spectrum through its one-dimensional reduction:
    // sqrt(w(x)) sin(pi |alpha| (x - x')) / (pi (x - x')) sqrt(w(x')), w from upa_weight_profile.
    // n_nodes is split across the trapezoid pieces (composite Gauss-Legendre), at least 8 per piece.
    KernelSpectrum upa_reduced_spectrum(const SquintFactor &sf, std::size_t n_nodes);

    struct SandwichBounds
    {
        double lower = 0.0;
        double upper = 0.0;
    };

    // (delta l3 lambda_ell(B_{alpha_lo(delta)}), l3 lambda_ell(B_{alpha_up})); lambda of
    // alpha_lo = 0 is taken as 0.
    SandwichBounds sandwich_bounds(const SquintFactor &sf, double delta, std::size_t ell, std::size_t n_nodes);

    // sum_l ((|alpha|/N) lambda_l(B) - lambda_l(B_alpha))^2 / sum_l lambda_l(B_alpha)^2, using the
    // ULA kernel when alpha_y = 0 and the planar reduction otherwise. Missing eigenvalues on
    // either side count as zero.
    double discretization_error(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                std::size_t n_nodes);

    // Continuum limit of the ULA beamspace gain:
    // (1/alpha) sum_{l < n_rf} int over [c_l - alpha/2, c_l + alpha/2] of sinc^2, c_l = l - (n_rf - 1)/2.
    double beamspace_limit_gain(double alpha, std::size_t n_rf);
}

#endif
