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

#ifndef SQUINT_QUADRATURE_HPP
#define SQUINT_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace squint::quad
{
    // Gauss-Legendre rule mapped to [lo, hi]. Weights sum to hi - lo.
    struct Rule
    {
        std::vector<double> nodes;
        std::vector<double> weights;

        std::size_t size() const { return nodes.size(); }
    };

    Rule gauss_legendre(std::size_t n, double lo, double hi);

    // Composite rule: n nodes on each consecutive [breaks[i], breaks[i+1]]. Zero-length pieces are skipped.
    Rule composite_gauss_legendre(std::size_t n_per_piece, const std::vector<double> &breaks);

    // Globally adaptive Gauss-Kronrod (21 point) integration. Throws NumericalError on failure.
    double adaptive(const std::function<double(double)> &f, double lo, double hi, double rel_tol = 1e-13,
                    double abs_tol = 1e-15);

    // Si(x) = int_0^x sin(t)/t dt by adaptive quadrature, Taylor series for |x| < 1e-3.
    double sine_integral(double x);

    // int_0^x (sin(pi t) / (pi t))^2 dt in closed form through Si. Odd in x.
    double sinc_squared_primitive(double x);

    // (sin(pi t) / (pi t))^2 with the removable singularity at 0.
    double sinc_squared(double t);
}

#endif
