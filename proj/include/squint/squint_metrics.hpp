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

#ifndef SQUINT_SQUINT_METRICS_HPP
#define SQUINT_SQUINT_METRICS_HPP

#include "squint/geometry.hpp"

#include <cstddef>

namespace squint
{
    // F_N(x) = (1/N) (sin(N x / 2) / sin(x / 2))^2, equal to N at multiples of 2 pi.
    double dirichlet_gain(std::size_t n, double x);

    // Analog MRT gain of a ULA steered at f = 0, evaluated at relative frequency f_rel:
    // F_N(2 pi d_x u_x f / c). Rejects non-ULA geometries and out-of-band frequencies.
    double mrt_gain_ula(const ArrayGeometry &geom, const Direction &dir, const BandSpec &band, double f_rel);

    // Dispersion factor at which the MRT gain at the band edge drops by 3 dB: the root in (0, 2) of
    // sin(pi a / 2) / (N sin(pi a / (2N))) = 1/sqrt(2), by bisection to 1e-10. Requires n >= 2.
    double alpha_3db(std::size_t n);
}

#endif
