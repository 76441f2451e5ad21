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

#ifndef SQUINT_CHANNEL_HPP
#define SQUINT_CHANNEL_HPP

#include "squint/geometry.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace squint
{
    // Line-of-sight steering vector at relative frequency f_rel.
    // entries[n] = exp(j 2 pi (f_c + f_rel) / c * u^T r_n), i.e. the entries of a^*(f).
    // The channel column a(f) used by beamformers is entries.conjugate().
    struct SteeringVector
    {
        Eigen::VectorXcd entries;
        Direction dir;
        double f_rel = 0.0;

        Eigen::VectorXcd channel() const { return entries.conjugate(); }
    };

    struct LinkBudget
    {
        double g_t = 1.0;  // transmit element gain, linear
        double g_r = 1.0;  // receive element gain, linear
        double p_t = 1.0;  // radiated power [W]
        double range = 1.0; // [m]
        double n0 = 1.0;   // noise spectral density [W/Hz]

        void validate() const;
    };

    // sin(n x / 2) / sin(x / 2), the centered Dirichlet sum sum_k exp(j x (k - (n-1)/2)).
    // Within 1e-9 of a multiple of 2 pi the second-order series is used.
    double dirichlet_ratio(std::size_t n, double x);

    // a^*(f), rejecting f_rel outside the band.
    SteeringVector steering_vector(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel);

    // Same entries without the band check; beamspace columns may sit outside the band.
    Eigen::VectorXcd steering_entries(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel);

    // Separable factors a_x^*(f) and a_y^*(f); their Kronecker product is steering_entries.
    Eigen::VectorXcd steering_entries_x(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel);
    Eigen::VectorXcd steering_entries_y(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel);

    // sum_n exp(j 2 pi (df / c) u^T r_n) in O(1); real for centered positions.
    double array_factor(const ArrayGeometry &geom, const Direction &dir, double df);

    // a^*(f1) a(f2), both frequencies in band. |value| <= N.
    std::complex<double> steering_inner_product(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                                double f1, double f2);

    // lambda^2 G_t G_r P_t / ((4 pi D)^2 W N_0)
    double snr(const BandSpec &band, const LinkBudget &budget);
}

#endif
