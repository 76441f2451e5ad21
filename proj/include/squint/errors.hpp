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

#ifndef SQUINT_ERRORS_HPP
#define SQUINT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace squint
{
    // Bad argument or violated precondition.
    class InvalidArgument : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A dense N x N matrix was requested above the configured cap.
    class SizeError : public InvalidArgument
    {
    public:
        SizeError(std::size_t requested, std::size_t cap)
            : InvalidArgument("dense correlation matrix of size " + std::to_string(requested) +
                              " exceeds the cap of " + std::to_string(cap) +
                              "; use spectrum_gram for large arrays"),
              requested_(requested), cap_(cap) {}

        std::size_t requested() const { return requested_; }
        std::size_t cap() const { return cap_; }

    private:
        std::size_t requested_;
        std::size_t cap_;
    };

    // Analog beamformer without full column rank.
    class RankDeficient : public InvalidArgument
    {
    public:
        using InvalidArgument::InvalidArgument;
    };

    // Solver or quadrature failed to converge.
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
