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

#ifndef SQUINT_LINALG_HPP
#define SQUINT_LINALG_HPP

#include <Eigen/Dense>

#include <optional>

namespace squint::linalg
{
    // Eigen-decomposition of a Hermitian / real symmetric matrix, eigenvalues sorted nonincreasing.
    struct HermitianEigen
    {
        Eigen::VectorXd values;
        std::optional<Eigen::MatrixXcd> vectors; // columns match values
    };

    struct SymmetricEigen
    {
        Eigen::VectorXd values;
        std::optional<Eigen::MatrixXd> vectors;
    };

    // LAPACK zheevd / dsyevd on the upper triangle. The argument is consumed.
    // Throws NumericalError when the divide-and-conquer solver fails to converge.
    HermitianEigen hermitian_eigen(Eigen::MatrixXcd matrix, bool want_vectors);
    SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix, bool want_vectors);

    // Factorization of the Gram matrix G = W^H W of an analog beamformer.
    // Throws RankDeficient when G is numerically singular (reciprocal condition below 1e-13).
    class GramSolver
    {
    public:
        explicit GramSolver(const Eigen::MatrixXcd &gram);

        double quadratic_form(const Eigen::VectorXcd &c) const; // c^H G^-1 c
        Eigen::VectorXcd solve(const Eigen::VectorXcd &c) const;
        Eigen::MatrixXcd inverse_sqrt() const; // G^(-1/2), Hermitian

    private:
        Eigen::LLT<Eigen::MatrixXcd> llt_;
        Eigen::MatrixXcd gram_;
    };
}

#endif
