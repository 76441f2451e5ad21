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

#include "squint/geometry.hpp"

#include "squint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace squint
{
    BandSpec::BandSpec(double carrier_hz, double bandwidth_hz)
        : carrier_(carrier_hz), bandwidth_(bandwidth_hz)
    {
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw InvalidArgument("carrier frequency must be positive");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw InvalidArgument("bandwidth must be positive");
        if (!(bandwidth_hz < 2.0 * carrier_hz))
            throw InvalidArgument("bandwidth must stay below twice the carrier");
    }

    bool BandSpec::contains(double f_rel) const
    {
        const double half = 0.5 * bandwidth_;
        const double slack = 1e-12 * bandwidth_;
        return f_rel >= -half - slack && f_rel <= half + slack;
    }

    ArrayGeometry::ArrayGeometry(std::size_t n_x, std::size_t n_y, double d_x, double d_y)
        : n_x_(n_x), n_y_(n_y), d_x_(d_x), d_y_(d_y)
    {
        if (n_x == 0 || n_y == 0)
            throw InvalidArgument("array dimensions must be at least 1");
        if (!(d_x > 0.0) || !(d_y > 0.0) || !std::isfinite(d_x) || !std::isfinite(d_y))
            throw InvalidArgument("element spacings must be positive");
    }

    ArrayGeometry ArrayGeometry::ula(std::size_t n, double spacing)
    {
        return ArrayGeometry(n, 1, spacing, spacing);
    }

    ArrayGeometry ArrayGeometry::in_wavelengths(std::size_t n_x, std::size_t n_y, double spacing_wavelengths,
                                                const BandSpec &band)
    {
        const double d = spacing_wavelengths * band.wavelength();
        return ArrayGeometry(n_x, n_y, d, d);
    }

    std::vector<Position> element_positions(const ArrayGeometry &geom)
    {
        std::vector<Position> out;
        out.reserve(geom.size());
        for (std::size_t ix = 0; ix < geom.n_x(); ++ix)
            for (std::size_t iy = 0; iy < geom.n_y(); ++iy)
                out.push_back({geom.x_of(ix), geom.y_of(iy)});
        return out;
    }

    Direction::Direction(double u_x, double u_y) : u_x_(u_x), u_y_(u_y)
    {
        if (!std::isfinite(u_x) || !std::isfinite(u_y))
            throw InvalidArgument("direction components must be finite");
        // Allow round-off from trigonometric construction.
        if (u_x * u_x + u_y * u_y > 1.0 + 1e-12)
            throw InvalidArgument("direction lies outside the unit disc in uv-space");
    }

    double Direction::norm() const
    {
        return std::hypot(u_x_, u_y_);
    }

    Direction Direction::scaled_unchecked(double factor) const
    {
        Direction out;
        out.u_x_ = factor * u_x_;
        out.u_y_ = factor * u_y_;
        return out;
    }

    Direction uv_from_angles(double theta_deg, double phi_deg)
    {
        constexpr double deg = std::numbers::pi / 180.0;
        const double theta = theta_deg * deg;
        const double phi = phi_deg * deg;
        const double s = std::sin(phi);
        return Direction(s * std::cos(theta), s * std::sin(theta));
    }

    double SquintFactor::alpha_lo(double delta) const
    {
        if (!(delta >= 0.0 && delta <= 1.0))
            throw InvalidArgument("delta must lie in [0, 1]");
        if (!shape)
            return 0.0;
        return norm * ((1.0 - delta) * shape->l1 + delta * shape->l2);
    }

    SquintFactor SquintFactor::from_components(double alpha_x, double alpha_y)
    {
        if (!std::isfinite(alpha_x) || !std::isfinite(alpha_y))
            throw InvalidArgument("squint factor components must be finite");

        SquintFactor sf;
        sf.alpha_x = alpha_x;
        sf.alpha_y = alpha_y;
        sf.norm = std::hypot(alpha_x, alpha_y);
        const double ax = std::abs(alpha_x);
        const double ay = std::abs(alpha_y);
        sf.alpha_up = ax + ay;
        if (sf.norm > 0.0)
            sf.shape = ProjectedAperture{(ax + ay) / sf.norm, std::abs(ax - ay) / sf.norm, sf.norm / std::max(ax, ay)};
        return sf;
    }

    SquintFactor squint_factor(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band)
    {
        // (W / f_c) (L u / lambda) = W L u / c
        const double scale = band.bandwidth() / kSpeedOfLight;
        return SquintFactor::from_components(scale * geom.aperture_x() * dir.u_x(),
                                             scale * geom.aperture_y() * dir.u_y());
    }

    std::size_t ceil_count(double value)
    {
        if (!(value >= 0.0) || !std::isfinite(value))
            throw InvalidArgument("count argument must be finite and nonnegative");
        const double nearest = std::round(value);
        if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, value))
            return static_cast<std::size_t>(nearest);
        return static_cast<std::size_t>(std::ceil(value));
    }

    std::size_t required_rf_chains(const SquintFactor &sf, std::size_t additional)
    {
        return std::max<std::size_t>(1, ceil_count(sf.alpha_up) + additional);
    }
}
