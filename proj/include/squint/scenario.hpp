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

#ifndef SQUINT_SCENARIO_HPP
#define SQUINT_SCENARIO_HPP

#include "squint/errors.hpp"
#include "squint/geometry.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace squint
{
    // Malformed or infeasible scenario description.
    class ScenarioError : public InvalidArgument
    {
    public:
        using InvalidArgument::InvalidArgument;
    };

    enum class ArchitectureKind
    {
        optimal,
        beamspace,
        hybridly,
        partially,
    };

    std::string to_string(ArchitectureKind kind);
    ArchitectureKind architecture_from_string(const std::string &name);

    struct PartitionSpec
    {
        std::size_t m_x = 1;
        std::size_t m_y = 1;
    };

    // Batch experiment description. Defaults reproduce the 128 x 128 half-wavelength UPA
    // sweep at 300 GHz over ten bandwidths and 360 azimuths.
    struct Scenario
    {
        std::size_t n_x = 128;
        std::size_t n_y = 128;
        double spacing_wavelengths = 0.5;
        double carrier_hz = 300e9;
        std::vector<double> bandwidths_hz{1e9, 2e9, 3e9, 4e9, 5e9, 10e9, 15e9, 20e9, 25e9, 30e9};
        double zenith_deg = 90.0;
        std::vector<double> azimuth_deg; // defaults to 0, 1, ..., 359
        std::vector<ArchitectureKind> architectures{ArchitectureKind::optimal, ArchitectureKind::beamspace};
        std::vector<std::size_t> additional_chains{0, 1, 2};
        std::optional<PartitionSpec> partition;

        std::optional<std::size_t> frequency_nodes; // Gauss-Legendre nodes over the band
        std::optional<std::size_t> kernel_nodes;    // Nystrom nodes for continuum spectra

        // Grids for the continuum experiments.
        std::vector<double> alpha_grid;
        std::vector<std::size_t> chain_offsets{0, 1};
        double compare_alpha = 4.0;
        std::vector<std::size_t> subarray_counts;
        std::vector<std::size_t> element_counts{32, 64, 128};

        Scenario();

        ArrayGeometry geometry() const;
        BandSpec band(double bandwidth_hz) const;

        // Throws ScenarioError when a field is out of range or fields are inconsistent.
        void validate() const;
    };

    // Parses a JSON scenario. Unknown keys are rejected at every level.
    Scenario parse_scenario(const nlohmann::json &doc);
    Scenario load_scenario(const std::filesystem::path &path);

    nlohmann::json to_json(const Scenario &scenario);
}

#endif
