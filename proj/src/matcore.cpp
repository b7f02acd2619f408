#include "asym/matcore.hpp"

#include <cmath>
#include <string>

namespace asym {

double frobenius(const Matrix& m) {
    return m.norm();
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw NonFiniteError(std::string(what) + ": entries contain NaN or Inf");
    }
}

bool is_hermitian(const Matrix& h, double tolerance) {
    if (h.rows() != h.cols()) {
        return false;
    }
    const double scale = std::max(1.0, frobenius(h));
    return frobenius(h - h.adjoint()) <= tolerance * scale;
}

HermitianEig eig_hermitian(const Matrix& h) {
    require_finite(h, "eig_hermitian");
    if (h.rows() < 1 || h.rows() != h.cols()) {
        throw ShapeMismatchError("eig_hermitian: matrix must be square and nonempty");
    }
    if (!is_hermitian(h)) {
        throw NotHermitianError("eig_hermitian: ||H - H^dagger||_F exceeds 1e-10 * max(1, ||H||_F)");
    }
    // Symmetrize so roundoff-level asymmetry cannot leak into the solver.
    Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw Error("eig_hermitian: eigensolver failed to converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix func_hermitian(const Matrix& h, const std::function<double(double)>& f, bool support_only) {
    HermitianEig eig = eig_hermitian(h);
    const double lambda_max = eig.eigenvalues.cwiseAbs().maxCoeff();
    const double tau = zero_threshold(lambda_max);
    RealVector mapped(eig.eigenvalues.size());
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lambda = eig.eigenvalues[i];
        if (support_only && std::abs(lambda) <= tau) {
            mapped[i] = 0.0;
            continue;
        }
        const double value = f(lambda);
        if (!std::isfinite(value)) {
            throw DomainError("func_hermitian: f(" + std::to_string(lambda) +
                              ") is not finite; eigenvalue is above the zero threshold");
        }
        mapped[i] = value;
    }
    return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

namespace {

// Shared PSD precheck: eigendecomposition plus the eigenvalue floor.
HermitianEig eig_psd(const Matrix& psd, const char* what) {
    HermitianEig eig = eig_hermitian(psd);
    const double scale = std::max(1.0, frobenius(psd));
    if (eig.eigenvalues.minCoeff() < -tol::kPsd * scale) {
        throw NotPsdError(std::string(what) + ": eigenvalue " +
                          std::to_string(eig.eigenvalues.minCoeff()) +
                          " below -1e-10 * max(1, ||P||_F)");
    }
    return eig;
}

}  // namespace

Matrix pinv_sqrt(const Matrix& psd) {
    HermitianEig eig = eig_psd(psd, "pinv_sqrt");
    const double tau = zero_threshold(eig.eigenvalues.cwiseAbs().maxCoeff());
    RealVector mapped(eig.eigenvalues.size());
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double lambda = eig.eigenvalues[i];
        mapped[i] = lambda > tau ? 1.0 / std::sqrt(lambda) : 0.0;
    }
    return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix kernel_projector(const Matrix& psd) {
    HermitianEig eig = eig_psd(psd, "kernel_projector");
    const double tau = zero_threshold(eig.eigenvalues.cwiseAbs().maxCoeff());
    Matrix proj = Matrix::Zero(psd.rows(), psd.cols());
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues[i] <= tau) {
            proj.noalias() += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
        }
    }
    return proj;
}

Matrix support_projector(const Matrix& psd) {
    HermitianEig eig = eig_psd(psd, "support_projector");
    const double tau = zero_threshold(eig.eigenvalues.cwiseAbs().maxCoeff());
    Matrix proj = Matrix::Zero(psd.rows(), psd.cols());
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues[i] > tau) {
            proj.noalias() += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
        }
    }
    return proj;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_finite(a, "kron");
    require_finite(b, "kron");
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double trace_norm_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("trace_norm_distance: shapes differ");
    }
    if (!is_hermitian(a) || !is_hermitian(b)) {
        throw NotHermitianError("trace_norm_distance: inputs must be Hermitian");
    }
    // For a Hermitian difference the singular values are |eigenvalues|.
    HermitianEig eig = eig_hermitian(a - b);
    return 0.5 * eig.eigenvalues.cwiseAbs().sum();
}

}  // namespace asym
