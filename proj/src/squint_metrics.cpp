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

#include "squint/squint_metrics.hpp"

#include "squint/channel.hpp"
#include "squint/errors.hpp"

#include <cmath>
#include <numbers>

namespace squint
{
    double dirichlet_gain(std::size_t n, double x)
    {
        const double r = dirichlet_ratio(n, x);
        return r * r / static_cast<double>(n);
    }

    double mrt_gain_ula(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel)
    {
        if (!geom.is_ula())
            throw InvalidArgument("MRT gain formula applies to linear arrays only");
        if (!band.contains(f_rel))
            throw InvalidArgument("relative frequency lies outside the band");
        const double x = 2.0 * std::numbers::pi * geom.d_x() * dir.u_x() * f_rel / kSpeedOfLight;
        return dirichlet_gain(geom.n_x(), x);
    }

    double alpha_3db(std::size_t n)
    {
        if (n < 2)
            throw InvalidArgument("the 3-dB dispersion factor needs at least 2 elements");
        const double nn = static_cast<double>(n);
        const double target = 1.0 / std::numbers::sqrt2;
        const auto h = [&](double a) {
            const double half = 0.5 * std::numbers::pi * a;
            return std::sin(half) / (nn * std::sin(half / nn)) - target;
        };

        // The normalized response falls monotonically across the main lobe.
        double lo = 1e-6;
        double hi = 2.0;
        while (hi - lo > 1e-10)
        {
            const double mid = 0.5 * (lo + hi);
            if (h(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }
}
