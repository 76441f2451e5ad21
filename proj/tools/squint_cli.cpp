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

#include "squint/errors.hpp"
#include "squint/experiments.hpp"
#include "squint/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace
{
    struct Options
    {
        std::string config;
        std::string out;
        std::string svg;
        bool json = false;
        std::size_t nodes = 0;
        std::size_t threads = 0;
    };

    void add_common(CLI::App *cmd, Options &o, bool scenario_based)
    {
        cmd->add_option("--config", o.config, "Scenario file (JSON)")->check(CLI::ExistingFile);
        cmd->add_option("--out", o.out, "Write records to this file instead of stdout");
        cmd->add_flag("--json", o.json, "Emit a JSON array instead of CSV");
        cmd->add_option("--nodes", o.nodes,
                        scenario_based ? "Frequency quadrature nodes (overrides the scenario)"
                                       : "Kernel quadrature nodes (overrides the scenario)");
        cmd->add_option("--svg", o.svg, "Also write a line chart of the records");
    }

    squint::Scenario load(const Options &o)
    {
        return o.config.empty() ? squint::Scenario() : squint::load_scenario(o.config);
    }

    void write_text(const std::string &path, const std::string &text)
    {
        if (path.empty())
        {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw squint::InvalidArgument("cannot open '" + path + "' for writing");
        out << text;
    }

    void emit(const squint::Table &table, const Options &o, const squint::ChartSpec &chart)
    {
        write_text(o.out, o.json ? squint::to_json(table).dump(2) + "\n" : squint::to_csv(table));
        if (!o.svg.empty())
            write_text(o.svg, squint::svg_line_chart(table, chart));
    }

    std::string read_text(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw squint::InvalidArgument("cannot open '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Beam-squint analysis and RF-chain budgeting for wideband hybrid arrays"};
    app.require_subcommand(1);

    Options o;

    auto *table1 = app.add_subcommand("table1", "Worst normalized gain over azimuth per architecture and bandwidth");
    add_common(table1, o, true);
    table1->add_option("--threads", o.threads, "Worker threads (default: logical cores)");

    auto *gain_linear = app.add_subcommand("gain-linear", "Continuum gain with ceil(alpha) + offset chains");
    add_common(gain_linear, o, false);

    auto *arch_compare = app.add_subcommand("arch-compare", "Fully versus partially connected arrays");
    add_common(arch_compare, o, false);

    auto *approx_error = app.add_subcommand("approx-error", "Discrete versus continuum spectrum error");
    add_common(approx_error, o, false);

    auto *spectrum = app.add_subcommand("spectrum", "Leading eigenvalues of the correlation matrix");
    add_common(spectrum, o, true);

    auto *chains = app.add_subcommand("chains", "Required RF chains ceil(alpha_up) per bandwidth and azimuth");
    add_common(chains, o, true);

    std::string csv_in;
    squint::ChartSpec plot_spec;
    auto *plot = app.add_subcommand("plot", "Line chart (SVG) from a CSV file");
    plot->add_option("csv", csv_in, "Input CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--x", plot_spec.x, "Column on the horizontal axis")->required();
    plot->add_option("--y", plot_spec.y, "Columns on the vertical axis")->required();
    plot->add_option("--group", plot_spec.group, "Columns splitting rows into separate lines");
    plot->add_flag("--log-y", plot_spec.log_y, "Logarithmic vertical axis");
    plot->add_option("--title", plot_spec.title, "Chart title");
    plot->add_option("--svg", o.svg, "Output file (default: stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (table1->parsed())
        {
            auto s = load(o);
            if (o.nodes)
                s.frequency_nodes = o.nodes;
            emit(squint::run_table1(s, o.threads), o,
                 {"bandwidth_hz", {"worst_normalized_gain"}, {"architecture", "additional_chains"}, false, "table1"});
        }
        else if (gain_linear->parsed())
        {
            auto s = load(o);
            emit(squint::run_gain_linear(s.alpha_grid, s.chain_offsets, o.nodes ? o.nodes : s.kernel_nodes.value_or(0)),
                 o, {"alpha", {"normalized_gain"}, {"chain_offset"}, false, "gain-linear"});
        }
        else if (arch_compare->parsed())
        {
            auto s = load(o);
            emit(squint::run_arch_compare(s.compare_alpha, s.subarray_counts,
                                          o.nodes ? o.nodes : s.kernel_nodes.value_or(0)),
                 o,
                 {"relative_chains",
                  {"fully_asymptotic", "fully_alpha", "partial_mrt", "partial_optimal"},
                  {},
                  false,
                  "arch-compare"});
        }
        else if (approx_error->parsed())
        {
            auto s = load(o);
            emit(squint::run_approx_error(s.alpha_grid, s.element_counts,
                                          o.nodes ? o.nodes : s.kernel_nodes.value_or(0)),
                 o, {"alpha", {"normalized_error"}, {"n"}, true, "approx-error"});
        }
        else if (spectrum->parsed())
        {
            auto s = load(o);
            if (o.nodes)
                s.frequency_nodes = o.nodes;
            emit(squint::run_spectrum(s), o,
                 {"index", {"normalized_eigenvalue"}, {"bandwidth_hz", "azimuth_deg"}, false, "spectrum"});
        }
        else if (chains->parsed())
        {
            emit(squint::run_chains(load(o)), o,
                 {"azimuth_deg", {"required_chains"}, {"bandwidth_hz"}, false, "chains"});
        }
        else if (plot->parsed())
        {
            write_text(o.svg, squint::svg_line_chart(squint::parse_csv(read_text(csv_in)), plot_spec));
        }
    }
    catch (const squint::InvalidArgument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const squint::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
