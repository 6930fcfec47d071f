// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QTOMO_LINALG_HPP
#define QTOMO_LINALG_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "qtomo/error.hpp"

namespace qtomo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical acceptance thresholds shared by all validators.
struct Tolerances {
    double hermitian = 1e-10;
    double unitary = 1e-10;
    double trace = 1e-10;
    double psd = 1e-9;
    double reconstruction = 1e-9;
};

inline double max_abs(const ComplexMatrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermitian_residual(const ComplexMatrix &m) { return max_abs(m - m.adjoint()); }

inline void require_square(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::NotSquare, std::string(what) + " must be a non-empty square matrix, got " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalue k.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const {
        return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
    }
};

inline SpectralDecomposition eig_hermitian(const ComplexMatrix &h, const Tolerances &tol = {}) {
    require_square(h, "eig_hermitian input");
    double residual = hermitian_residual(h);
    if (residual > tol.hermitian) {
        throw Error(ErrorCode::NotHermitian, "symmetry residual " + std::to_string(residual), residual);
    }
    // Only the lower triangle is read by the solver; symmetrize so the residual is shared evenly.
    ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NotHermitian, "eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Row-major composite ordering: entry (i*p + k, j*q + l) = a(i, j) * b(k, l).
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline RealMatrix abs_squared(const ComplexMatrix &m) { return m.cwiseAbs2(); }

class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix m, const Tolerances &tol = {}) : m_(std::move(m)) {
        require_square(m_, "unitary");
        double residual = max_abs(m_ * m_.adjoint() - ComplexMatrix::Identity(m_.rows(), m_.cols()));
        if (residual > tol.unitary) {
            throw Error(ErrorCode::NotUnitary, "u u^dagger deviates from identity by " + std::to_string(residual),
                        residual);
        }
    }

    static UnitaryMatrix identity(Eigen::Index n) { return UnitaryMatrix(ComplexMatrix::Identity(n, n)); }

    Eigen::Index dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }
    UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

   private:
    ComplexMatrix m_;
};

/// Hermitian, unit-trace, positive semidefinite. Construct through `validate_density`.
class DensityMatrix {
   public:
    Eigen::Index dim() const { return m_.rows(); }
    const ComplexMatrix &matrix() const { return m_; }

    /// Spectrum with round-off negatives (above -psd tolerance) kept as computed.
    SpectralDecomposition spectrum() const {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_);
        return {solver.eigenvalues(), solver.eigenvectors()};
    }

   private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    friend DensityMatrix validate_density(const ComplexMatrix &, const Tolerances &);

    ComplexMatrix m_;
};

inline DensityMatrix validate_density(const ComplexMatrix &m, const Tolerances &tol = {}) {
    require_square(m, "density matrix");
    double residual = hermitian_residual(m);
    if (residual > tol.hermitian) {
        throw Error(ErrorCode::NotHermitian, "symmetry residual " + std::to_string(residual), residual);
    }
    double trace = m.trace().real();
    if (std::abs(trace - 1.0) > tol.trace) {
        throw Error(ErrorCode::TraceNotOne, "trace is " + std::to_string(trace), trace);
    }
    ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues()(0);
    if (min_eig < -tol.psd) {
        throw Error(ErrorCode::NotPositiveSemidefinite, "smallest eigenvalue " + std::to_string(min_eig), min_eig);
    }
    return DensityMatrix(std::move(sym));
}

/// rho^q through the spectrum, with 0^q = 0 and round-off negatives treated as zero.
inline ComplexMatrix matrix_q_power(const DensityMatrix &rho, double q) {
    if (!(q >= 1.0)) {
        throw Error(ErrorCode::QOutOfRange, "q must be >= 1, got " + std::to_string(q), q);
    }
    SpectralDecomposition spec = rho.spectrum();
    RealVector powered = spec.eigenvalues.unaryExpr([q](double x) { return x > 0.0 ? std::pow(x, q) : 0.0; });
    return spec.eigenvectors * powered.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

}  // namespace qtomo

#endif
