#include "asym/quantum.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "asym/kernels.hpp"

namespace asym {

PureStateVector::PureStateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (!amplitudes_.allFinite()) {
        throw NonFiniteError("PureStateVector: amplitudes contain NaN or Inf");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tol::kNorm) {
        throw NotNormalizedError("PureStateVector: ||psi||_2 = " + std::to_string(norm) +
                                 ", must be 1 within 1e-10");
    }
}

DensityMatrix::DensityMatrix(Matrix rho, double trace_low_tol) : mat_(std::move(rho)) {
    require_finite(mat_, "DensityMatrix");
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
        throw ShapeMismatchError("DensityMatrix: matrix must be square and nonempty");
    }
    if (!is_hermitian(mat_)) {
        throw NotHermitianError("DensityMatrix: ||rho - rho^dagger||_F exceeds 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver((mat_ + mat_.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol::kPsd) {
        throw NotPsdError("DensityMatrix: min eigenvalue " + std::to_string(min_eig) +
                          " below -1e-10");
    }
    const double trace = mat_.trace().real();
    if (trace - 1.0 > tol::kTrace || 1.0 - trace > trace_low_tol) {
        throw TraceNotOneError("DensityMatrix: trace " + std::to_string(trace) +
                               " outside [1 - " + std::to_string(trace_low_tol) + ", 1 + 1e-10]");
    }
}

DensityMatrix density_from_pure(const PureStateVector& psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix validate_density(const Matrix& candidate) {
    return DensityMatrix(candidate);
}

namespace {

// Deficit operator D = I - sum K^dagger K and its Frobenius residual.
std::pair<Matrix, double> completeness_deficit(std::span<const Matrix> ops) {
    const Index d = ops.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& k : ops) {
        sum.noalias() += k.adjoint() * k;
    }
    Matrix deficit = Matrix::Identity(d, d) - sum;
    const double residual = frobenius(deficit);
    return {std::move(deficit), residual};
}

void check_ops(const std::vector<Matrix>& ops) {
    if (ops.empty()) {
        throw ShapeMismatchError("KrausChannel: Kraus list must be nonempty");
    }
    const Index d = ops.front().rows();
    for (const Matrix& k : ops) {
        require_finite(k, "KrausChannel");
        if (k.rows() != d || k.cols() != d) {
            throw ShapeMismatchError("KrausChannel: all Kraus operators must be d x d");
        }
    }
}

}  // namespace

KrausChannel KrausChannel::cptp(std::vector<Matrix> ops, double tp_tol) {
    check_ops(ops);
    auto [deficit, residual] = completeness_deficit(ops);
    if (residual > tp_tol) {
        throw NotTracePreservingError(
            "KrausChannel::cptp: ||sum K^dagger K - I||_F = " + std::to_string(residual), residual);
    }
    KrausChannel ch;
    ch.dim_ = ops.front().rows();
    ch.ops_ = std::move(ops);
    ch.status_ = TpStatus::trace_preserving;
    ch.tp_tolerance_ = tp_tol;
    ch.completeness_residual_ = residual;
    return ch;
}

KrausChannel KrausChannel::trace_decreasing(std::vector<Matrix> ops, double max_deficit,
                                            double tp_tol) {
    check_ops(ops);
    auto [deficit, residual] = completeness_deficit(ops);
    HermitianEig eig = eig_hermitian((deficit + deficit.adjoint()) / 2.0);
    if (eig.eigenvalues.minCoeff() < -tp_tol) {
        throw NotTracePreservingError(
            "KrausChannel::trace_decreasing: deficit operator is not PSD, channel would "
            "increase trace",
            residual);
    }
    const double deficit_norm = eig.eigenvalues.cwiseAbs().maxCoeff();
    if (deficit_norm > max_deficit + tp_tol) {
        throw NotTracePreservingError(
            "KrausChannel::trace_decreasing: deficit " + std::to_string(deficit_norm) +
                " exceeds declared bound " + std::to_string(max_deficit),
            deficit_norm);
    }
    KrausChannel ch;
    ch.dim_ = ops.front().rows();
    ch.ops_ = std::move(ops);
    ch.status_ = TpStatus::trace_decreasing;
    ch.tp_tolerance_ = tp_tol;
    ch.declared_deficit_ = max_deficit;
    ch.completeness_residual_ = residual;
    return ch;
}

KrausChannel KrausChannel::raw(std::vector<Matrix> ops, double tp_tol) {
    check_ops(ops);
    auto [deficit, residual] = completeness_deficit(ops);
    KrausChannel ch;
    ch.dim_ = ops.front().rows();
    ch.ops_ = std::move(ops);
    ch.status_ = residual <= tp_tol ? TpStatus::trace_preserving : TpStatus::general;
    ch.tp_tolerance_ = tp_tol;
    ch.completeness_residual_ = residual;
    return ch;
}

Matrix KrausChannel::apply_matrix(const Matrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_) {
        throw DimMismatchError("KrausChannel::apply_matrix: dimension mismatch");
    }
    return kernels::conjugation_sum(ops_, x);
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) {
        throw DimMismatchError("apply_channel: channel dim " + std::to_string(channel.dim()) +
                               " vs state dim " + std::to_string(rho.dim()));
    }
    Matrix out = channel.apply_matrix(rho.matrix());
    if (channel.status() == TpStatus::trace_decreasing) {
        const double deficit = 1.0 - out.trace().real();
        if (deficit > channel.declared_deficit() + tol::kTrace) {
            throw TraceLossError("apply_channel: trace deficit " + std::to_string(deficit) +
                                     " exceeds declared bound",
                                 deficit);
        }
        return DensityMatrix(std::move(out), channel.declared_deficit() + tol::kTrace);
    }
    return DensityMatrix(std::move(out));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
    if (second.dim() != first.dim()) {
        throw DimMismatchError("compose: channel dimensions differ");
    }
    std::vector<Matrix> ops;
    ops.reserve(second.ops().size() * first.ops().size());
    for (const Matrix& k2 : second.ops()) {
        for (const Matrix& k1 : first.ops()) {
            ops.push_back(k2 * k1);
        }
    }
    const double tp_tol = second.tp_tolerance() + first.tp_tolerance();
    if (second.status() == TpStatus::general || first.status() == TpStatus::general) {
        return KrausChannel::raw(std::move(ops), tp_tol);
    }
    if (second.status() == TpStatus::trace_decreasing ||
        first.status() == TpStatus::trace_decreasing) {
        // Trace lost by the composition is at most the sum of the stage deficits.
        return KrausChannel::trace_decreasing(
            std::move(ops), second.declared_deficit() + first.declared_deficit(), tp_tol);
    }
    return KrausChannel::cptp(std::move(ops), tp_tol);
}

KrausChannel adjoint_channel(const KrausChannel& channel) {
    std::vector<Matrix> ops;
    ops.reserve(channel.ops().size());
    for (const Matrix& k : channel.ops()) {
        ops.push_back(k.adjoint());
    }
    return KrausChannel::raw(std::move(ops), channel.tp_tolerance());
}

CptpReport validate_cptp(const KrausChannel& channel) {
    CptpReport report;
    report.tolerance = channel.tp_tolerance();
    report.tp_residual = channel.completeness_residual();
    report.trace_preserving = report.tp_residual <= report.tolerance;
    return report;
}

double action_residual(const KrausChannel& a, const KrausChannel& b) {
    if (a.dim() != b.dim()) {
        throw DimMismatchError("action_residual: channel dimensions differ");
    }
    const Index d = a.dim();
    return kernels::max_over_tasks(static_cast<std::size_t>(d * d), [&](std::size_t task) {
        const Index i = static_cast<Index>(task) / d;
        const Index j = static_cast<Index>(task) % d;
        Matrix unit = Matrix::Zero(d, d);
        unit(i, j) = 1.0;
        return frobenius(a.apply_matrix(unit) - b.apply_matrix(unit));
    });
}

}  // namespace asym
