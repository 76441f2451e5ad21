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

#include "squint/quadrature.hpp"

#include "squint/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <utility>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

namespace squint::quad
{
    namespace
    {
        struct GlTableDeleter
        {
            void operator()(gsl_integration_glfixed_table *t) const { gsl_integration_glfixed_table_free(t); }
        };

        struct WorkspaceDeleter
        {
            void operator()(gsl_integration_workspace *w) const { gsl_integration_workspace_free(w); }
        };

        double trampoline(double x, void *params)
        {
            return (*static_cast<const std::function<double(double)> *>(params))(x);
        }

        // GSL's default handler aborts; errors are reported through return codes instead.
        struct HandlerGuard
        {
            HandlerGuard() : previous(gsl_set_error_handler_off()) {}
            ~HandlerGuard() { gsl_set_error_handler(previous); }
            gsl_error_handler_t *previous;
        };
    }

    namespace
    {
        // (P_n(z), P_n'(z)) by the three-term recurrence; |z| < 1.
        std::pair<double, double> legendre_with_derivative(std::size_t n, double z)
        {
            double p0 = 1.0;
            double p1 = z;
            for (std::size_t k = 2; k <= n; ++k)
            {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            return {p1, static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0)};
        }
    }

    Rule gauss_legendre(std::size_t n, double lo, double hi)
    {
        if (n == 0)
            throw InvalidArgument("Gauss-Legendre rule needs at least one node");
        std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(gsl_integration_glfixed_table_alloc(n));
        if (!table)
            throw NumericalError("could not allocate Gauss-Legendre table");

        Rule rule;
        rule.nodes.resize(n);
        rule.weights.resize(n);
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < n; ++i)
        {
            gsl_integration_glfixed_point(lo, hi, i, &rule.nodes[i], &rule.weights[i], table.get());
            // GSL's weights for untabulated orders are good to about 1e-10 only; the nodes are
            // exact, so one Newton step on P_n and the closed-form weight restore full precision.
            if (n < 2)
                continue;
            double z = (rule.nodes[i] - mid) / half;
            const auto [p, dp] = legendre_with_derivative(n, z);
            z -= p / dp;
            const double d = legendre_with_derivative(n, z).second;
            rule.nodes[i] = mid + half * z;
            rule.weights[i] = 2.0 * half / ((1.0 - z * z) * d * d);
        }
        return rule;
    }

    Rule composite_gauss_legendre(std::size_t n_per_piece, const std::vector<double> &breaks)
    {
        Rule rule;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        {
            if (!(breaks[i + 1] > breaks[i]))
                continue;
            const Rule piece = gauss_legendre(n_per_piece, breaks[i], breaks[i + 1]);
            rule.nodes.insert(rule.nodes.end(), piece.nodes.begin(), piece.nodes.end());
            rule.weights.insert(rule.weights.end(), piece.weights.begin(), piece.weights.end());
        }
        return rule;
    }

    double adaptive(const std::function<double(double)> &f, double lo, double hi, double rel_tol, double abs_tol)
    {
        if (lo == hi)
            return 0.0;
        constexpr std::size_t limit = 4096;
        std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(limit));
        gsl_function fn;
        fn.function = &trampoline;
        fn.params = const_cast<std::function<double(double)> *>(&f);

        HandlerGuard guard;
        double result = 0.0;
        double error = 0.0;
        const int status = gsl_integration_qag(&fn, lo, hi, abs_tol, rel_tol, limit, GSL_INTEG_GAUSS21, ws.get(),
                                               &result, &error);
        // Round-off limited results are still accurate to far better than the requested tolerance.
        if (status != GSL_SUCCESS && status != GSL_EROUND)
            throw NumericalError(std::string("adaptive quadrature failed: ") + gsl_strerror(status));
        return result;
    }

    double sinc_squared(double t)
    {
        if (std::abs(t) < 1e-8)
            return 1.0 - std::pow(std::numbers::pi * t, 2) / 3.0;
        const double s = std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
        return s * s;
    }

    double sine_integral(double x)
    {
        if (std::abs(x) < 1e-3)
        {
            const double x2 = x * x;
            return x * (1.0 - x2 / 18.0 + x2 * x2 / 600.0);
        }
        const auto sinc = [](double t) { return std::abs(t) < 1e-8 ? 1.0 - t * t / 6.0 : std::sin(t) / t; };
        // Split at multiples of pi so every panel holds one half-oscillation.
        const double ax = std::abs(x);
        double total = 0.0;
        double lo = 0.0;
        while (lo < ax)
        {
            const double hi = std::min(ax, lo + std::numbers::pi);
            total += adaptive(sinc, lo, hi, 1e-14, 1e-16);
            lo = hi;
        }
        return x < 0.0 ? -total : total;
    }

    double sinc_squared_primitive(double x)
    {
        if (x == 0.0)
            return 0.0;
        const double px = std::numbers::pi * x;
        const double s = std::sin(px);
        return (sine_integral(2.0 * px) - s * s / px) / std::numbers::pi;
    }
}
