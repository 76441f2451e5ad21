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

#include "squint/channel.hpp"

#include "squint/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace squint
{
    namespace
    {
        constexpr double kTwoPi = 2.0 * std::numbers::pi;

        void require_in_band(const BandSpec &band, double f_rel)
        {
            if (!band.contains(f_rel))
                throw InvalidArgument("relative frequency " + std::to_string(f_rel) + " Hz lies outside the band");
        }

        Eigen::VectorXcd phase_ramp(std::size_t n, double step, double origin)
        {
            Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < n; ++k)
                out[static_cast<Eigen::Index>(k)] = std::polar(1.0, step * (origin + static_cast<double>(k)));
            return out;
        }

        // Spatial wavenumber scale 2 pi (f_c + f) / c.
        double wavenumber(const BandSpec &band, double f_rel)
        {
            return kTwoPi * (band.carrier() + f_rel) / kSpeedOfLight;
        }
    }

    void LinkBudget::validate() const
    {
        if (!(g_t > 0.0 && g_r > 0.0 && p_t > 0.0 && range > 0.0 && n0 > 0.0))
            throw InvalidArgument("link budget entries must all be positive");
    }

    double dirichlet_ratio(std::size_t n, double x)
    {
        if (n == 0)
            throw InvalidArgument("dirichlet_ratio needs n >= 1");
        const double nn = static_cast<double>(n);
        const double k = std::round(x / kTwoPi);
        const double eps = x - kTwoPi * k;
        // Shifting x by 2 pi k multiplies the sum by (-1)^(k (n - 1)).
        const bool odd_shift = std::fmod(std::abs(k), 2.0) == 1.0 && (n % 2 == 0);
        const double sign = odd_shift ? -1.0 : 1.0;
        if (std::abs(eps) < 1e-9)
            return sign * nn * (1.0 - (nn * nn - 1.0) * eps * eps / 24.0);
        return sign * std::sin(0.5 * nn * eps) / std::sin(0.5 * eps);
    }

    Eigen::VectorXcd steering_entries_x(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel)
    {
        const double step = wavenumber(band, f_rel) * dir.u_x() * geom.d_x();
        return phase_ramp(geom.n_x(), step, -0.5 * static_cast<double>(geom.n_x() - 1));
    }

    Eigen::VectorXcd steering_entries_y(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel)
    {
        const double step = wavenumber(band, f_rel) * dir.u_y() * geom.d_y();
        return phase_ramp(geom.n_y(), step, -0.5 * static_cast<double>(geom.n_y() - 1));
    }

    Eigen::VectorXcd steering_entries(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel)
    {
        const Eigen::VectorXcd ax = steering_entries_x(geom, dir, band, f_rel);
        const Eigen::VectorXcd ay = steering_entries_y(geom, dir, band, f_rel);
        Eigen::VectorXcd out(static_cast<Eigen::Index>(geom.size()));
        const auto ny = ay.size();
        for (Eigen::Index ix = 0; ix < ax.size(); ++ix)
            out.segment(ix * ny, ny) = ax[ix] * ay;
        return out;
    }

    SteeringVector steering_vector(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel)
    {
        require_in_band(band, f_rel);
        return SteeringVector{steering_entries(geom, dir, band, f_rel), dir, f_rel};
    }

    double array_factor(const ArrayGeometry &geom, const Direction &dir, double df)
    {
        const double scale = kTwoPi * df / kSpeedOfLight;
        return dirichlet_ratio(geom.n_x(), scale * dir.u_x() * geom.d_x()) *
               dirichlet_ratio(geom.n_y(), scale * dir.u_y() * geom.d_y());
    }

    std::complex<double> steering_inner_product(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band,
                                                double f1, double f2)
    {
        require_in_band(band, f1);
        require_in_band(band, f2);
        return {array_factor(geom, dir, f1 - f2), 0.0};
    }

    double snr(const BandSpec &band, const LinkBudget &budget)
    {
        budget.validate();
        const double lambda = band.wavelength();
        const double spread = 4.0 * std::numbers::pi * budget.range;
        return lambda * lambda * budget.g_t * budget.g_r * budget.p_t /
               (spread * spread * band.bandwidth() * budget.n0);
    }
}
