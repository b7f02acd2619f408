#pragma once

// Density matrices and Kraus channels: validation, application, composition,
// adjoint. States are immutable once validated; channels carry an explicit
// trace-preservation status so truncation deficits are auditable instead of
// silent.

#include <span>
#include <vector>

#include "asym/errors.hpp"
#include "asym/matcore.hpp"
#include "asym/types.hpp"

namespace asym {

class PureStateVector {
  public:
    explicit PureStateVector(Vector amplitudes);

    Index dim() const { return amplitudes_.size(); }
    const Vector& amplitudes() const { return amplitudes_; }

  private:
    Vector amplitudes_;
};

class DensityMatrix {
  public:
    // Validates Hermiticity (1e-10), positivity (min eigenvalue >= -1e-10) and
    // trace. trace_low_tol widens only the lower trace bound; channel
    // application through a trace_decreasing channel passes its declared
    // deficit there.
    explicit DensityMatrix(Matrix rho, double trace_low_tol = tol::kTrace);

    Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }
    double trace_real() const { return mat_.trace().real(); }

  private:
    Matrix mat_;
};

DensityMatrix density_from_pure(const PureStateVector& psi);

// Same checks as the DensityMatrix constructor; kept as a named operation so
// callers can validate candidate matrices deliberately.
DensityMatrix validate_density(const Matrix& candidate);

enum class TpStatus {
    trace_preserving,   // sum K^dagger K = I within tp_tolerance
    trace_decreasing,   // deficit operator I - sum K^dagger K is PSD, norm <= declared deficit
    general,            // anything else (adjoint channels, map fragments)
};

class KrausChannel {
  public:
    // Trace-preserving channel; throws NotTracePreservingError above tp_tol.
    static KrausChannel cptp(std::vector<Matrix> ops, double tp_tol = tol::kTracePreserving);

    // Channel allowed to lose trace up to max_deficit (spectral norm of the
    // deficit operator). The deficit must be positive semidefinite: trace can
    // only decrease.
    static KrausChannel trace_decreasing(std::vector<Matrix> ops, double max_deficit,
                                         double tp_tol = tol::kTracePreserving);

    // No completeness requirement. Status is measured: trace_preserving if the
    // residual happens to be within tp_tol, otherwise general.
    static KrausChannel raw(std::vector<Matrix> ops, double tp_tol = tol::kTracePreserving);

    Index dim() const { return dim_; }
    std::span<const Matrix> ops() const { return ops_; }
    TpStatus status() const { return status_; }
    double tp_tolerance() const { return tp_tolerance_; }
    double declared_deficit() const { return declared_deficit_; }
    // ||sum K^dagger K - I||_F measured at construction.
    double completeness_residual() const { return completeness_residual_; }

    // Operator-sum action on an arbitrary matrix; no state validation.
    Matrix apply_matrix(const Matrix& x) const;

  private:
    KrausChannel() = default;

    Index dim_ = 0;
    std::vector<Matrix> ops_;
    TpStatus status_ = TpStatus::general;
    double tp_tolerance_ = tol::kTracePreserving;
    double declared_deficit_ = 0.0;
    double completeness_residual_ = 0.0;
};

// sum_n K_n rho K_n^dagger, revalidated as a state. Trace deficit is allowed
// only for trace_decreasing channels and only up to the declared bound;
// beyond it TraceLossError reports the lost amount.
DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);

// Kraus list {K2_i K1_j}; acts as second-after-first application.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

// Kraus list {K_n^dagger}; unital iff the input is trace-preserving.
KrausChannel adjoint_channel(const KrausChannel& channel);

struct CptpReport {
    double tp_residual = 0.0;  // ||sum K^dagger K - I||_F
    bool trace_preserving = false;
    double tolerance = tol::kTracePreserving;
    // Complete positivity is structural for operator-sum form.
    bool structurally_cp = true;
};

CptpReport validate_cptp(const KrausChannel& channel);

// Kraus freedom makes list comparison meaningless; channels are compared by
// action on the matrix-unit basis. Returns max_ij ||A(E_ij) - B(E_ij)||_F.
double action_residual(const KrausChannel& a, const KrausChannel& b);

}  // namespace asym
