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

#ifndef SQUINT_GEOMETRY_HPP
#define SQUINT_GEOMETRY_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace squint
{
    inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]

    // Carrier and bandwidth of the transmitted signal. Relative frequencies f live in [-W/2, W/2].
    class BandSpec
    {
    public:
        BandSpec(double carrier_hz, double bandwidth_hz);

        double carrier() const { return carrier_; }     // f_c [Hz]
        double bandwidth() const { return bandwidth_; } // W [Hz]
        double wavelength() const { return kSpeedOfLight / carrier_; }

        // True if f_rel lies in [-W/2, W/2], with a relative slack of 1e-12 for node round-off.
        bool contains(double f_rel) const;

    private:
        double carrier_;
        double bandwidth_;
    };

    struct Position
    {
        double x = 0.0; // [m]
        double y = 0.0; // [m]
    };

    // Uniform planar array of n_x * n_y elements. A ULA along x has n_y = 1.
    // Element n sits at column n / n_y and row n % n_y, so channel vectors are a_x (x) a_y.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::size_t n_x, std::size_t n_y, double d_x, double d_y);

        static ArrayGeometry ula(std::size_t n, double spacing);

        // Square-cell UPA with spacing given in wavelengths of the band carrier.
        static ArrayGeometry in_wavelengths(std::size_t n_x, std::size_t n_y, double spacing_wavelengths,
                                            const BandSpec &band);

        std::size_t n_x() const { return n_x_; }
        std::size_t n_y() const { return n_y_; }
        std::size_t size() const { return n_x_ * n_y_; }
        double d_x() const { return d_x_; }
        double d_y() const { return d_y_; }
        double aperture_x() const { return static_cast<double>(n_x_) * d_x_; } // L_x
        double aperture_y() const { return static_cast<double>(n_y_) * d_y_; } // L_y
        bool is_ula() const { return n_y_ == 1; }

        // Centered coordinate of column ix / row iy.
        double x_of(std::size_t ix) const { return d_x_ * (static_cast<double>(ix) - 0.5 * static_cast<double>(n_x_ - 1)); }
        double y_of(std::size_t iy) const { return d_y_ * (static_cast<double>(iy) - 0.5 * static_cast<double>(n_y_ - 1)); }

    private:
        std::size_t n_x_;
        std::size_t n_y_;
        double d_x_;
        double d_y_;
    };

    std::vector<Position> element_positions(const ArrayGeometry &geom);

    // uv-coordinates of the pointing direction; the origin is broadside.
    class Direction
    {
    public:
        Direction() = default;
        Direction(double u_x, double u_y);

        double u_x() const { return u_x_; }
        double u_y() const { return u_y_; }
        double norm() const;
        bool is_broadside() const { return u_x_ == 0.0 && u_y_ == 0.0; }

        // The same direction stretched by a frequency ratio, (1 + f/f_c) u. Not range checked,
        // since the stretched vector may leave the visible region.
        Direction scaled_unchecked(double factor) const;

    private:
        double u_x_ = 0.0;
        double u_y_ = 0.0;
    };

    // Azimuth theta and zenith phi in degrees.
    Direction uv_from_angles(double theta_deg, double phi_deg);

    // Shape of the unit square projected onto the squint direction alpha / |alpha|.
    struct ProjectedAperture
    {
        double l1 = 0.0; // projected width, (|a_x| + |a_y|) / |a|
        double l2 = 0.0; // width of the flat top, ||a_x| - |a_y|| / |a|
        double l3 = 0.0; // height of the flat top, |a| / max(|a_x|, |a_y|)
    };

    // Channel dispersion factor of a planar array.
    struct SquintFactor
    {
        double alpha_x = 0.0;
        double alpha_y = 0.0;
        double norm = 0.0;
        double alpha_up = 0.0;                  // |alpha_x| + |alpha_y|
        std::optional<ProjectedAperture> shape; // absent at exact broadside

        bool is_broadside() const { return norm == 0.0; }

        // |alpha| ((1 - delta) l1 + delta l2); zero at broadside.
        double alpha_lo(double delta) const;

        static SquintFactor from_components(double alpha_x, double alpha_y);
    };

    SquintFactor squint_factor(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band);

    // ceil(alpha_up) + additional, at least one chain. alpha_up within 1e-9 (relative) above an
    // integer is treated as that integer so round-off cannot add a chain.
    std::size_t required_rf_chains(const SquintFactor &sf, std::size_t additional = 0);

    // Shared ceiling with the same round-off snap.
    std::size_t ceil_count(double value);
}

#endif
