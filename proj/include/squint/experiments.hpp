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

#ifndef SQUINT_EXPERIMENTS_HPP
#define SQUINT_EXPERIMENTS_HPP

#include "squint/scenario.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace squint
{
    // Column-labelled records. Cells are JSON scalars (string, integer or floating point).
    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<nlohmann::json>> rows;

        std::size_t column(const std::string &name) const; // throws InvalidArgument if absent
    };

    // Worst g_avg / N over the azimuth grid for every (architecture, additional, bandwidth) cell.
    // Columns: architecture, additional_chains, bandwidth_hz, worst_normalized_gain, worst_azimuth_deg.
    // Work is spread over `threads` workers (0 = hardware concurrency); output does not depend on it.
    Table run_table1(const Scenario &scenario, std::size_t threads = 0);

    // (sum_{l < n_rf} lambda_l(B_alpha)) / alpha with n_rf = ceil(alpha) + offset.
    // Columns: alpha, chain_offset, n_rf, normalized_gain.
    Table run_gain_linear(const std::vector<double> &alphas, const std::vector<std::size_t> &offsets,
                          std::size_t kernel_nodes = 0);

    // Fully versus partially connected arrays as a function of the chain count M.
    // Columns: m, relative_chains, fully_asymptotic, fully_alpha, partial_mrt, partial_optimal.
    Table run_arch_compare(double alpha, const std::vector<std::size_t> &m_grid, std::size_t kernel_nodes = 0);

    // Normalized distance between the scaled spectrum of an N-element ULA with dispersion alpha
    // and the continuum spectrum. Columns: alpha, n, normalized_error.
    Table run_approx_error(const std::vector<double> &alphas, const std::vector<std::size_t> &element_counts,
                           std::size_t kernel_nodes = 0);

    // Leading Gram-path eigenvalues of B for each bandwidth and azimuth of the scenario.
    // Columns: bandwidth_hz, azimuth_deg, index, eigenvalue, normalized_eigenvalue.
    Table run_spectrum(const Scenario &scenario, std::size_t extra = 8);

    // Columns: bandwidth_hz, azimuth_deg, alpha_x, alpha_y, alpha_up, required_chains.
    Table run_chains(const Scenario &scenario);

    // ---------------------------------------------------------------- output

    // Header row, then one line per record; floating point cells printed with %.10g.
    std::string to_csv(const Table &table);
    nlohmann::json to_json(const Table &table);

    // Reads CSV produced by to_csv (no quoting). Numeric-looking cells become numbers.
    Table parse_csv(const std::string &text);

    struct ChartSpec
    {
        std::string x;
        std::vector<std::string> y;
        std::vector<std::string> group; // one line per distinct combination of these columns
        bool log_y = false;
        std::string title;
    };

    std::string svg_line_chart(const Table &table, const ChartSpec &spec);
}

#endif
