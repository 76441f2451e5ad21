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

#include "squint/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace squint
{
    using nlohmann::json;

    namespace
    {
        void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where)
        {
            if (!obj.is_object())
                throw ScenarioError(where + " must be a JSON object");
            for (const auto &[key, value] : obj.items())
                if (!allowed.count(key))
                    throw ScenarioError("unknown key '" + key + "' in " + where);
        }

        double get_number(const json &v, const std::string &name)
        {
            if (!v.is_number())
                throw ScenarioError("'" + name + "' must be a number");
            return v.get<double>();
        }

        std::size_t get_count(const json &v, const std::string &name)
        {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw ScenarioError("'" + name + "' must be a nonnegative integer");
            return v.get<std::size_t>();
        }

        std::vector<double> get_numbers(const json &v, const std::string &name)
        {
            if (!v.is_array())
                throw ScenarioError("'" + name + "' must be an array of numbers");
            std::vector<double> out;
            for (const auto &e : v)
                out.push_back(get_number(e, name));
            return out;
        }

        std::vector<std::size_t> get_counts(const json &v, const std::string &name)
        {
            if (!v.is_array())
                throw ScenarioError("'" + name + "' must be an array of integers");
            std::vector<std::size_t> out;
            for (const auto &e : v)
                out.push_back(get_count(e, name));
            return out;
        }

        // Inclusive range, count rounded to keep the endpoint.
        std::vector<double> expand_range(const json &v)
        {
            reject_unknown(v, {"start", "stop", "step"}, "azimuth_deg");
            if (!v.contains("start") || !v.contains("stop"))
                throw ScenarioError("azimuth_deg range needs 'start' and 'stop'");
            const double start = get_number(v.at("start"), "azimuth_deg.start");
            const double stop = get_number(v.at("stop"), "azimuth_deg.stop");
            const double step = v.contains("step") ? get_number(v.at("step"), "azimuth_deg.step") : 1.0;
            if (!(step > 0.0) || stop < start)
                throw ScenarioError("azimuth_deg range needs step > 0 and stop >= start");
            const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
            std::vector<double> out(count);
            for (std::size_t i = 0; i < count; ++i)
                out[i] = start + static_cast<double>(i) * step;
            return out;
        }

        std::vector<double> default_azimuths()
        {
            std::vector<double> out(360);
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = static_cast<double>(i);
            return out;
        }

        std::vector<double> default_alpha_grid()
        {
            std::vector<double> out;
            for (int i = 1; i <= 64; ++i)
                out.push_back(0.25 * i);
            return out;
        }
    }

    std::string to_string(ArchitectureKind kind)
    {
        switch (kind)
        {
        case ArchitectureKind::optimal:
            return "optimal";
        case ArchitectureKind::beamspace:
            return "beamspace";
        case ArchitectureKind::hybridly:
            return "hybridly";
        case ArchitectureKind::partially:
            return "partially";
        }
        return "unknown";
    }

    ArchitectureKind architecture_from_string(const std::string &name)
    {
        if (name == "optimal")
            return ArchitectureKind::optimal;
        if (name == "beamspace")
            return ArchitectureKind::beamspace;
        if (name == "hybridly")
            return ArchitectureKind::hybridly;
        if (name == "partially")
            return ArchitectureKind::partially;
        throw ScenarioError("unknown architecture '" + name + "'");
    }

    Scenario::Scenario() : azimuth_deg(default_azimuths()), alpha_grid(default_alpha_grid())
    {
        for (std::size_t m = 1; m <= 12; ++m)
            subarray_counts.push_back(m);
    }

    ArrayGeometry Scenario::geometry() const
    {
        const double d = spacing_wavelengths * kSpeedOfLight / carrier_hz;
        return ArrayGeometry(n_x, n_y, d, d);
    }

    BandSpec Scenario::band(double bandwidth_hz) const
    {
        return BandSpec(carrier_hz, bandwidth_hz);
    }

    void Scenario::validate() const
    {
        try
        {
            if (n_x == 0 || n_y == 0)
                throw ScenarioError("array dimensions must be positive");
            if (!(spacing_wavelengths > 0.0))
                throw ScenarioError("element spacing must be positive");
            if (bandwidths_hz.empty())
                throw ScenarioError("bandwidth list is empty");
            for (double w : bandwidths_hz)
                (void)band(w);
            (void)geometry();
            if (azimuth_deg.empty())
                throw ScenarioError("azimuth grid is empty");
            if (!std::isfinite(zenith_deg))
                throw ScenarioError("zenith angle must be finite");
            if (architectures.empty())
                throw ScenarioError("architecture list is empty");
            if (additional_chains.empty())
                throw ScenarioError("additional-chain list is empty");
            if (frequency_nodes && *frequency_nodes < 2)
                throw ScenarioError("frequency_nodes must be at least 2");
            if (kernel_nodes && *kernel_nodes < 8)
                throw ScenarioError("kernel_nodes must be at least 8");
            for (double a : alpha_grid)
                if (!(a > 0.0))
                    throw ScenarioError("alpha_grid entries must be positive");
            if (!(compare_alpha > 0.0))
                throw ScenarioError("compare_alpha must be positive");
            for (std::size_t m : subarray_counts)
                if (m == 0)
                    throw ScenarioError("subarray_counts entries must be positive");
            for (std::size_t n : element_counts)
                if (n < 2)
                    throw ScenarioError("element_counts entries must be at least 2");

            const bool needs_partition = std::any_of(architectures.begin(), architectures.end(), [](auto k) {
                return k == ArchitectureKind::hybridly || k == ArchitectureKind::partially;
            });
            if (needs_partition)
            {
                if (!partition)
                    throw ScenarioError("hybridly/partially architectures need a 'partition'");
                if (partition->m_x == 0 || partition->m_y == 0 || n_x % partition->m_x != 0 ||
                    n_y % partition->m_y != 0)
                    throw ScenarioError("partition must divide the array dimensions");
            }
        }
        catch (const ScenarioError &)
        {
            throw;
        }
        catch (const InvalidArgument &e)
        {
            throw ScenarioError(e.what());
        }
    }

    Scenario parse_scenario(const json &doc)
    {
        reject_unknown(doc,
                       {"array", "carrier_hz", "bandwidths_hz", "zenith_deg", "azimuth_deg", "architectures",
                        "additional_chains", "partition", "quadrature", "alpha_grid", "chain_offsets",
                        "compare_alpha", "subarray_counts", "element_counts"},
                       "scenario");
        Scenario s;
        if (doc.contains("array"))
        {
            const auto &a = doc.at("array");
            reject_unknown(a, {"n_x", "n_y", "spacing_wavelengths"}, "array");
            if (a.contains("n_x"))
                s.n_x = get_count(a.at("n_x"), "array.n_x");
            if (a.contains("n_y"))
                s.n_y = get_count(a.at("n_y"), "array.n_y");
            if (a.contains("spacing_wavelengths"))
                s.spacing_wavelengths = get_number(a.at("spacing_wavelengths"), "array.spacing_wavelengths");
        }
        if (doc.contains("carrier_hz"))
            s.carrier_hz = get_number(doc.at("carrier_hz"), "carrier_hz");
        if (doc.contains("bandwidths_hz"))
            s.bandwidths_hz = get_numbers(doc.at("bandwidths_hz"), "bandwidths_hz");
        if (doc.contains("zenith_deg"))
            s.zenith_deg = get_number(doc.at("zenith_deg"), "zenith_deg");
        if (doc.contains("azimuth_deg"))
        {
            const auto &az = doc.at("azimuth_deg");
            s.azimuth_deg = az.is_array() ? get_numbers(az, "azimuth_deg") : expand_range(az);
        }
        if (doc.contains("architectures"))
        {
            const auto &arch = doc.at("architectures");
            if (!arch.is_array())
                throw ScenarioError("'architectures' must be an array of names");
            s.architectures.clear();
            for (const auto &e : arch)
            {
                if (!e.is_string())
                    throw ScenarioError("'architectures' entries must be strings");
                s.architectures.push_back(architecture_from_string(e.get<std::string>()));
            }
        }
        if (doc.contains("additional_chains"))
            s.additional_chains = get_counts(doc.at("additional_chains"), "additional_chains");
        if (doc.contains("partition"))
        {
            const auto &p = doc.at("partition");
            reject_unknown(p, {"m_x", "m_y"}, "partition");
            PartitionSpec part;
            if (p.contains("m_x"))
                part.m_x = get_count(p.at("m_x"), "partition.m_x");
            if (p.contains("m_y"))
                part.m_y = get_count(p.at("m_y"), "partition.m_y");
            s.partition = part;
        }
        if (doc.contains("quadrature"))
        {
            const auto &q = doc.at("quadrature");
            reject_unknown(q, {"frequency_nodes", "kernel_nodes"}, "quadrature");
            if (q.contains("frequency_nodes"))
                s.frequency_nodes = get_count(q.at("frequency_nodes"), "quadrature.frequency_nodes");
            if (q.contains("kernel_nodes"))
                s.kernel_nodes = get_count(q.at("kernel_nodes"), "quadrature.kernel_nodes");
        }
        if (doc.contains("alpha_grid"))
            s.alpha_grid = get_numbers(doc.at("alpha_grid"), "alpha_grid");
        if (doc.contains("chain_offsets"))
            s.chain_offsets = get_counts(doc.at("chain_offsets"), "chain_offsets");
        if (doc.contains("compare_alpha"))
            s.compare_alpha = get_number(doc.at("compare_alpha"), "compare_alpha");
        if (doc.contains("subarray_counts"))
            s.subarray_counts = get_counts(doc.at("subarray_counts"), "subarray_counts");
        if (doc.contains("element_counts"))
            s.element_counts = get_counts(doc.at("element_counts"), "element_counts");

        s.validate();
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ScenarioError("cannot open scenario file '" + path.string() + "'");
        json doc;
        try
        {
            in >> doc;
        }
        catch (const json::parse_error &e)
        {
            throw ScenarioError("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
        }
        return parse_scenario(doc);
    }

    json to_json(const Scenario &s)
    {
        json doc;
        doc["array"] = {{"n_x", s.n_x}, {"n_y", s.n_y}, {"spacing_wavelengths", s.spacing_wavelengths}};
        doc["carrier_hz"] = s.carrier_hz;
        doc["bandwidths_hz"] = s.bandwidths_hz;
        doc["zenith_deg"] = s.zenith_deg;
        doc["azimuth_deg"] = s.azimuth_deg;
        json arch = json::array();
        for (auto k : s.architectures)
            arch.push_back(to_string(k));
        doc["architectures"] = arch;
        doc["additional_chains"] = s.additional_chains;
        if (s.partition)
            doc["partition"] = {{"m_x", s.partition->m_x}, {"m_y", s.partition->m_y}};
        json q = json::object();
        if (s.frequency_nodes)
            q["frequency_nodes"] = *s.frequency_nodes;
        if (s.kernel_nodes)
            q["kernel_nodes"] = *s.kernel_nodes;
        if (!q.empty())
            doc["quadrature"] = q;
        doc["alpha_grid"] = s.alpha_grid;
        doc["chain_offsets"] = s.chain_offsets;
        doc["compare_alpha"] = s.compare_alpha;
        doc["subarray_counts"] = s.subarray_counts;
        doc["element_counts"] = s.element_counts;
        return doc;
    }
}
