#include "asym/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace asym {

// Entropies are accumulated in nats and scaled once at the end.
double entropy_unit_scale() {
    return settings().entropy_in_bits ? 1.0 / std::numbers::ln2 : 1.0;
}

namespace {

double clamp_nonnegative(double value, double tolerance) {
    if (value < 0.0 && value >= -tolerance) {
        return 0.0;
    }
    return value;
}

// -sum p log p in nats over the support of the spectrum.
double spectrum_entropy_nats(const RealVector& eigenvalues) {
    const double tau = zero_threshold(eigenvalues.cwiseAbs().maxCoeff());
    double sum = 0.0;
    for (Index i = 0; i < eigenvalues.size(); ++i) {
        const double p = eigenvalues[i];
        if (p > tau) {
            sum -= p * std::log(p);
        }
    }
    return sum;
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
    HermitianEig eig = eig_hermitian(rho.matrix());
    const double value = spectrum_entropy_nats(eig.eigenvalues) * entropy_unit_scale();
    return std::max(value, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimMismatchError("relative_entropy: dimension mismatch");
    }
    HermitianEig sig = eig_hermitian(sigma.matrix());
    const double tau_sigma = zero_threshold(sig.eigenvalues.cwiseAbs().maxCoeff());

    // Support test: mass of rho outside the support of sigma.
    double leakage = 0.0;
    for (Index j = 0; j < sig.eigenvalues.size(); ++j) {
        if (sig.eigenvalues[j] <= tau_sigma) {
            const Vector v = sig.eigenvectors.col(j);
            leakage += (v.adjoint() * rho.matrix() * v)(0, 0).real();
        }
    }
    HermitianEig re = eig_hermitian(rho.matrix());
    const double tau_rho = zero_threshold(re.eigenvalues.cwiseAbs().maxCoeff());
    if (leakage > tau_rho) {
        return std::numeric_limits<double>::infinity();
    }

    // Tr rho log rho from rho's spectrum; Tr rho log sigma in sigma's eigenbasis.
    double value = -spectrum_entropy_nats(re.eigenvalues);
    for (Index j = 0; j < sig.eigenvalues.size(); ++j) {
        const double q = sig.eigenvalues[j];
        if (q > tau_sigma) {
            const Vector v = sig.eigenvectors.col(j);
            const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
            value -= weight * std::log(q);
        }
    }
    value *= entropy_unit_scale();
    return clamp_nonnegative(value, tol::kTrace);
}

double rel_entropy_asymmetry(const SymmetryRep& rep, const DensityMatrix& rho) {
    const DensityMatrix twirled = twirl(rep, rho);
    const double value = von_neumann_entropy(twirled) - von_neumann_entropy(rho);
    return clamp_nonnegative(value, 1e-12);
}

AsymmetryCrossCheck rel_entropy_asymmetry_checked(const SymmetryRep& rep,
                                                  const DensityMatrix& rho) {
    const DensityMatrix twirled = twirl(rep, rho);
    AsymmetryCrossCheck check;
    check.entropy_difference = clamp_nonnegative(
        von_neumann_entropy(twirled) - von_neumann_entropy(rho), 1e-12);
    check.relative_entropy_form = relative_entropy(rho, twirled);
    check.discrepancy = std::abs(check.entropy_difference - check.relative_entropy_form);
    return check;
}

double skew_information(const DensityMatrix& rho, const Matrix& generator) {
    if (generator.rows() != rho.dim() || generator.cols() != rho.dim()) {
        throw DimMismatchError("skew_information: dimension mismatch");
    }
    if (!is_hermitian(generator)) {
        throw NotHermitianError("skew_information: generator must be Hermitian");
    }
    const Matrix sqrt_rho = func_hermitian(rho.matrix(), [](double x) { return std::sqrt(x); },
                                           /*support_only=*/true);
    const Matrix comm = sqrt_rho * generator - generator * sqrt_rho;
    // [sqrt(rho), N] is anti-Hermitian, so comm^2 is negative semidefinite.
    const double value = -0.5 * (comm * comm).trace().real();
    return std::max(value, 0.0);
}

std::vector<Measure> measure_registry(const SymmetryRep& rep) {
    std::vector<Measure> measures;
    measures.push_back({"relative_entropy_of_asymmetry",
                        [](const SymmetryRep& r, const DensityMatrix& rho) {
                            return rel_entropy_asymmetry(r, rho);
                        }});
    if (!rep.is_finite()) {
        measures.push_back({"skew_information",
                            [](const SymmetryRep& r, const DensityMatrix& rho) {
                                return skew_information(rho, r.generator());
                            }});
    }
    return measures;
}

}  // namespace asym
