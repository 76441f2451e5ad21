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

#include "squint/experiments.hpp"

#include "squint/architectures.hpp"
#include "squint/continuum.hpp"
#include "squint/errors.hpp"
#include "squint/geometry.hpp"
#include "squint/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace squint
{
    using nlohmann::json;

    std::size_t Table::column(const std::string &name) const
    {
        const auto it = std::find(columns.begin(), columns.end(), name);
        if (it == columns.end())
            throw InvalidArgument("no column named '" + name + "'");
        return static_cast<std::size_t>(it - columns.begin());
    }

    namespace
    {
        std::size_t worker_count(std::size_t requested, std::size_t jobs)
        {
            std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
            return std::max<std::size_t>(1, std::min(n, jobs));
        }

        // Runs body(i) for i in [0, jobs) on a pool; rethrows the first failure.
        template <class Body>
        void parallel_for(std::size_t jobs, std::size_t threads, Body body)
        {
            const std::size_t workers = worker_count(threads, jobs);
            if (workers == 1)
            {
                for (std::size_t i = 0; i < jobs; ++i)
                    body(i);
                return;
            }
            std::atomic<std::size_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_lock;
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < jobs; i = next++)
                    {
                        try
                        {
                            body(i);
                        }
                        catch (...)
                        {
                            std::lock_guard<std::mutex> guard(failure_lock);
                            if (!failure)
                                failure = std::current_exception();
                            next = jobs;
                        }
                    }
                });
            for (auto &t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
        }

        struct Cell
        {
            ArchitectureKind arch;
            std::size_t additional;
        };

        std::vector<Cell> table1_cells(const Scenario &s)
        {
            std::vector<Cell> cells;
            for (auto arch : s.architectures)
            {
                if (arch == ArchitectureKind::partially)
                {
                    cells.push_back({arch, 0});
                    continue;
                }
                for (std::size_t add : s.additional_chains)
                    cells.push_back({arch, add});
            }
            return cells;
        }

        std::size_t frequency_nodes_for(const Scenario &s, const SquintFactor &sf)
        {
            return s.frequency_nodes ? *s.frequency_nodes : default_frequency_nodes(sf);
        }

        // g_avg / N for every cell at one (bandwidth, azimuth).
        std::vector<double> table1_point(const Scenario &s, const std::vector<Cell> &cells,
                                         const ArrayGeometry &geom, const BandSpec &band, double azimuth)
        {
            const Direction dir = uv_from_angles(azimuth, s.zenith_deg);
            const SquintFactor sf = squint_factor(geom, dir, band);
            const double n = static_cast<double>(geom.size());
            const std::size_t k = frequency_nodes_for(s, sf);

            std::optional<SpectrumResult> spectrum;
            std::vector<double> out;
            out.reserve(cells.size());
            for (const auto &cell : cells)
            {
                switch (cell.arch)
                {
                case ArchitectureKind::optimal:
                {
                    if (!spectrum)
                        spectrum = spectrum_gram(geom, dir, band, k, false);
                    out.push_back(spectrum->partial_sum(required_rf_chains(sf, cell.additional)) / n);
                    break;
                }
                case ArchitectureKind::beamspace:
                    out.push_back(
                        beamspace_avg_gain(geom, dir, band, required_rf_chains(sf, cell.additional), k));
                    break;
                case ArchitectureKind::hybridly:
                case ArchitectureKind::partially:
                {
                    HybridPartition part{s.partition->m_x, s.partition->m_y, 1};
                    if (cell.arch == ArchitectureKind::hybridly)
                    {
                        const SquintFactor sub = squint_factor(subarray_geometry(geom, part), dir, band);
                        part.chains_per_subarray = required_rf_chains(sub, cell.additional);
                    }
                    out.push_back(hybrid_optimal_gain(geom, dir, band, part, s.frequency_nodes.value_or(0)));
                    break;
                }
                }
            }
            return out;
        }

        std::string format_number(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.10g", v);
            return buf;
        }

        std::string format_cell(const json &cell)
        {
            if (cell.is_string())
                return cell.get<std::string>();
            if (cell.is_number_integer())
                return std::to_string(cell.get<long long>());
            if (cell.is_number())
                return format_number(cell.get<double>());
            if (cell.is_boolean())
                return cell.get<bool>() ? "true" : "false";
            return "";
        }

        json parse_cell(const std::string &text)
        {
            if (text.empty())
                return text;
            const char *begin = text.c_str();
            char *end = nullptr;
            if (text.find_first_of(".eEnN") == std::string::npos)
            {
                const long long v = std::strtoll(begin, &end, 10);
                if (end == begin + text.size())
                    return v;
            }
            const double v = std::strtod(begin, &end);
            if (end == begin + text.size())
                return v;
            return text;
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            std::istringstream in(line);
            while (std::getline(in, cur, sep))
                out.push_back(cur);
            if (!line.empty() && line.back() == sep)
                out.emplace_back();
            return out;
        }
    }

    Table run_table1(const Scenario &s, std::size_t threads)
    {
        s.validate();
        const ArrayGeometry geom = s.geometry();
        const std::vector<Cell> cells = table1_cells(s);
        const std::size_t n_w = s.bandwidths_hz.size();
        const std::size_t n_az = s.azimuth_deg.size();

        std::vector<std::vector<double>> gains(n_w * n_az);
        parallel_for(n_w * n_az, threads, [&](std::size_t job) {
            const std::size_t iw = job / n_az;
            const std::size_t ia = job % n_az;
            gains[job] = table1_point(s, cells, geom, s.band(s.bandwidths_hz[iw]), s.azimuth_deg[ia]);
        });

        Table t;
        t.columns = {"architecture", "additional_chains", "bandwidth_hz", "worst_normalized_gain",
                     "worst_azimuth_deg"};
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (std::size_t iw = 0; iw < n_w; ++iw)
            {
                double worst = std::numeric_limits<double>::infinity();
                std::size_t arg = 0;
                for (std::size_t ia = 0; ia < n_az; ++ia)
                {
                    const double g = gains[iw * n_az + ia][c];
                    if (g < worst)
                    {
                        worst = g;
                        arg = ia;
                    }
                }
                t.rows.push_back({to_string(cells[c].arch), cells[c].additional, s.bandwidths_hz[iw], worst,
                                  s.azimuth_deg[arg]});
            }
        return t;
    }

    Table run_gain_linear(const std::vector<double> &alphas, const std::vector<std::size_t> &offsets,
                          std::size_t kernel_nodes)
    {
        Table t;
        t.columns = {"alpha", "chain_offset", "n_rf", "normalized_gain"};
        for (double alpha : alphas)
        {
            const KernelSpectrum spec =
                ula_kernel_spectrum(alpha, kernel_nodes ? kernel_nodes : default_kernel_nodes(alpha));
            for (std::size_t off : offsets)
            {
                const std::size_t n_rf = ceil_count(alpha) + off;
                const auto take = std::min<Eigen::Index>(static_cast<Eigen::Index>(n_rf), spec.eigenvalues.size());
                t.rows.push_back({alpha, off, n_rf, spec.eigenvalues.head(take).sum() / alpha});
            }
        }
        return t;
    }

    Table run_arch_compare(double alpha, const std::vector<std::size_t> &m_grid, std::size_t kernel_nodes)
    {
        if (!(alpha > 0.0))
            throw InvalidArgument("alpha must be positive");
        std::size_t nodes = kernel_nodes ? kernel_nodes : default_kernel_nodes(alpha);
        for (std::size_t m : m_grid)
            nodes = std::max(nodes, m + 16);
        const KernelSpectrum spec = ula_kernel_spectrum(alpha, nodes);

        Table t;
        t.columns = {"m", "relative_chains", "fully_asymptotic", "fully_alpha", "partial_mrt", "partial_optimal"};
        for (std::size_t m : m_grid)
        {
            if (m == 0)
                throw InvalidArgument("chain counts must be positive");
            const double p = static_cast<double>(m) / alpha;
            const auto take = std::min<Eigen::Index>(static_cast<Eigen::Index>(m), spec.eigenvalues.size());
            t.rows.push_back({m, p, std::min(p, 1.0), spec.eigenvalues.head(take).sum() / alpha,
                              partial_mrt_gain(alpha, m), partial_optimal_gain(alpha, m, kernel_nodes)});
        }
        return t;
    }

    Table run_approx_error(const std::vector<double> &alphas, const std::vector<std::size_t> &element_counts,
                           std::size_t kernel_nodes)
    {
        Table t;
        t.columns = {"alpha", "n", "normalized_error"};
        for (std::size_t n : element_counts)
        {
            if (n > kDenseCap)
                throw SizeError(n, kDenseCap);
            if (n < 2)
                throw InvalidArgument("element counts must be at least 2");
        }
        for (double alpha : alphas)
            for (std::size_t n : element_counts)
            {
                if (!(alpha > 0.0))
                    throw InvalidArgument("alpha must be positive");
                // Unit spacing along endfire: alpha = W N / c. Any carrier above W/2 gives the same spectrum.
                const double w = alpha * kSpeedOfLight / static_cast<double>(n);
                const ArrayGeometry geom = ArrayGeometry::ula(n, 1.0);
                const BandSpec band(w, w);
                const std::size_t nodes = kernel_nodes ? kernel_nodes : default_kernel_nodes(alpha);
                t.rows.push_back({alpha, n, discretization_error(geom, Direction(1.0, 0.0), band, nodes)});
            }
        return t;
    }

    Table run_spectrum(const Scenario &s, std::size_t extra)
    {
        s.validate();
        const ArrayGeometry geom = s.geometry();
        const double n = static_cast<double>(geom.size());
        Table t;
        t.columns = {"bandwidth_hz", "azimuth_deg", "index", "eigenvalue", "normalized_eigenvalue"};
        for (double w : s.bandwidths_hz)
        {
            const BandSpec band = s.band(w);
            for (double az : s.azimuth_deg)
            {
                const Direction dir = uv_from_angles(az, s.zenith_deg);
                const SquintFactor sf = squint_factor(geom, dir, band);
                const SpectrumResult spec = spectrum_gram(geom, dir, band, frequency_nodes_for(s, sf), false);
                const auto count = std::min<Eigen::Index>(
                    static_cast<Eigen::Index>(required_rf_chains(sf) + extra), spec.eigenvalues.size());
                for (Eigen::Index l = 0; l < count; ++l)
                    t.rows.push_back({w, az, static_cast<std::size_t>(l), spec.eigenvalues[l],
                                      spec.eigenvalues[l] / n});
            }
        }
        return t;
    }

    Table run_chains(const Scenario &s)
    {
        s.validate();
        const ArrayGeometry geom = s.geometry();
        Table t;
        t.columns = {"bandwidth_hz", "azimuth_deg", "alpha_x", "alpha_y", "alpha_up", "required_chains"};
        for (double w : s.bandwidths_hz)
        {
            const BandSpec band = s.band(w);
            for (double az : s.azimuth_deg)
            {
                const SquintFactor sf = squint_factor(geom, uv_from_angles(az, s.zenith_deg), band);
                t.rows.push_back({w, az, sf.alpha_x, sf.alpha_y, sf.alpha_up, required_rf_chains(sf)});
            }
        }
        return t;
    }

    std::string to_csv(const Table &table)
    {
        std::string out;
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out += (c ? "," : "") + table.columns[c];
        out += '\n';
        for (const auto &row : table.rows)
        {
            for (std::size_t c = 0; c < row.size(); ++c)
                out += (c ? "," : "") + format_cell(row[c]);
            out += '\n';
        }
        return out;
    }

    json to_json(const Table &table)
    {
        json out = json::array();
        for (const auto &row : table.rows)
        {
            json rec = json::object();
            for (std::size_t c = 0; c < table.columns.size() && c < row.size(); ++c)
                rec[table.columns[c]] = row[c];
            out.push_back(std::move(rec));
        }
        return out;
    }

    Table parse_csv(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        Table t;
        if (!std::getline(in, line))
            throw InvalidArgument("CSV input is empty");
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        t.columns = split(line, ',');
        while (std::getline(in, line))
        {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            const auto fields = split(line, ',');
            if (fields.size() != t.columns.size())
                throw InvalidArgument("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                                      std::to_string(t.columns.size()));
            std::vector<json> row;
            for (const auto &f : fields)
                row.push_back(parse_cell(f));
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    std::string svg_line_chart(const Table &table, const ChartSpec &spec)
    {
        if (spec.y.empty())
            throw InvalidArgument("chart needs at least one y column");
        const std::size_t xc = table.column(spec.x);
        std::vector<std::size_t> ycs;
        for (const auto &y : spec.y)
            ycs.push_back(table.column(y));
        std::vector<std::size_t> gcs;
        for (const auto &g : spec.group)
            gcs.push_back(table.column(g));

        auto number = [](const json &v) {
            if (!v.is_number())
                throw InvalidArgument("chart columns must be numeric");
            return v.get<double>();
        };

        std::map<std::string, std::vector<std::pair<double, double>>> series;
        std::vector<std::string> order;
        for (const auto &row : table.rows)
            for (std::size_t k = 0; k < ycs.size(); ++k)
            {
                std::string key = ycs.size() > 1 ? spec.y[k] : std::string();
                for (std::size_t g = 0; g < gcs.size(); ++g)
                    key += (key.empty() ? "" : " ") + spec.group[g] + "=" + format_cell(row[gcs[g]]);
                if (key.empty())
                    key = spec.y[k];
                double y = number(row[ycs[k]]);
                if (spec.log_y)
                {
                    if (!(y > 0.0))
                        continue;
                    y = std::log10(y);
                }
                if (!series.count(key))
                    order.push_back(key);
                series[key].emplace_back(number(row[xc]), y);
            }

        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const auto &[key, pts] : series)
            for (const auto &[x, y] : pts)
            {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        if (order.empty())
            x0 = y0 = 0.0, x1 = y1 = 1.0;
        if (x1 == x0)
            x1 = x0 + 1.0;
        if (y1 == y0)
            y1 = y0 + 1.0;

        constexpr double width = 640, height = 400, left = 60, right = 180, top = 30, bottom = 40;
        const double pw = width - left - right, ph = height - top - bottom;
        auto px = [&](double x) { return left + pw * (x - x0) / (x1 - x0); };
        auto py = [&](double y) { return top + ph * (1.0 - (y - y0) / (y1 - y0)); };
        static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
            << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
        svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
            << "\" fill=\"none\" stroke=\"black\"/>\n";
        if (!spec.title.empty())
            svg << "<text x=\"" << left << "\" y=\"18\">" << spec.title << "</text>\n";
        svg << "<text x=\"" << left << "\" y=\"" << height - 8 << "\">" << spec.x << ": " << format_number(x0)
            << " .. " << format_number(x1) << "</text>\n";
        svg << "<text x=\"4\" y=\"" << top + 12 << "\">" << format_number(spec.log_y ? std::pow(10.0, y1) : y1)
            << "</text>\n";
        svg << "<text x=\"4\" y=\"" << top + ph << "\">" << format_number(spec.log_y ? std::pow(10.0, y0) : y0)
            << "</text>\n";
        for (std::size_t s = 0; s < order.size(); ++s)
        {
            const char *colour = palette[s % 10];
            svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
            for (const auto &[x, y] : series[order[s]])
                svg << format_number(px(x)) << ',' << format_number(py(y)) << ' ';
            svg << "\"/>\n";
            svg << "<text x=\"" << left + pw + 8 << "\" y=\"" << top + 12 + 14 * static_cast<double>(s)
                << "\" fill=\"" << colour << "\">" << order[s] << "</text>\n";
        }
        svg << "</svg>\n";
        return svg.str();
    }
}
