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

#include "squint/linalg.hpp"

#include "squint/errors.hpp"

#include <lapacke.h>

#include <string>

namespace squint::linalg
{
    namespace
    {
        void check_square(Eigen::Index rows, Eigen::Index cols)
        {
            if (rows != cols)
                throw InvalidArgument("eigen-decomposition needs a square matrix");
        }

        void check_info(lapack_int info, const char *routine)
        {
            if (info < 0)
                throw InvalidArgument(std::string(routine) + ": illegal argument " + std::to_string(-info));
            if (info > 0)
                throw NumericalError(std::string(routine) + " failed to converge (info = " + std::to_string(info) + ")");
        }
    }

    HermitianEigen hermitian_eigen(Eigen::MatrixXcd matrix, bool want_vectors)
    {
        check_square(matrix.rows(), matrix.cols());
        const auto n = static_cast<lapack_int>(matrix.rows());
        HermitianEigen out;
        if (n == 0)
            return out;

        Eigen::VectorXd ascending(n);
        const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', n,
                                               reinterpret_cast<lapack_complex_double *>(matrix.data()), n,
                                               ascending.data());
        check_info(info, "zheevd");

        out.values = ascending.reverse();
        if (want_vectors)
            out.vectors = matrix.rowwise().reverse();
        return out;
    }

    SymmetricEigen symmetric_eigen(Eigen::MatrixXd matrix, bool want_vectors)
    {
        check_square(matrix.rows(), matrix.cols());
        const auto n = static_cast<lapack_int>(matrix.rows());
        SymmetricEigen out;
        if (n == 0)
            return out;

        Eigen::VectorXd ascending(n);
        const lapack_int info =
            LAPACKE_dsyevd(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'U', n, matrix.data(), n, ascending.data());
        check_info(info, "dsyevd");

        out.values = ascending.reverse();
        if (want_vectors)
            out.vectors = matrix.rowwise().reverse();
        return out;
    }

    GramSolver::GramSolver(const Eigen::MatrixXcd &gram) : gram_(gram)
    {
        if (gram.rows() != gram.cols() || gram.rows() == 0)
            throw InvalidArgument("Gram matrix must be square and non-empty");

        // Scale-free rank test on the Jacobi-equilibrated Gram matrix, so column norms do not matter.
        const Eigen::VectorXd d = gram.diagonal().real();
        if ((d.array() <= 0.0).any())
            throw RankDeficient("analog beamformer has a zero column");
        const Eigen::VectorXd s = d.array().rsqrt();
        const Eigen::MatrixXcd eq = s.asDiagonal() * gram * s.asDiagonal();
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(eq, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        const double hi = es.eigenvalues().maxCoeff();
        if (!(lo > 1e-13 * hi))
            throw RankDeficient("analog beamformer lacks full column rank");

        llt_.compute(gram);
        if (llt_.info() != Eigen::Success)
            throw RankDeficient("analog beamformer lacks full column rank");
    }

    double GramSolver::quadratic_form(const Eigen::VectorXcd &c) const
    {
        return c.dot(llt_.solve(c)).real();
    }

    Eigen::VectorXcd GramSolver::solve(const Eigen::VectorXcd &c) const
    {
        return llt_.solve(c);
    }

    Eigen::MatrixXcd GramSolver::inverse_sqrt() const
    {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_);
        return es.operatorInverseSqrt();
    }
}
