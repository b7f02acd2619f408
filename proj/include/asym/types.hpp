#pragma once

// Scalar and matrix aliases plus the global numeric knobs shared by every
// module. Everything is dense, double precision, row/column conventions as
// in Eigen (column-major storage, mathematical indexing).

#include <Eigen/Dense>
#include <complex>

namespace asym {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
// Validation bounds. Hermiticity/PSD/trace checks are relative to
// max(1, scale of the input) so O(1) quantum states get absolute bounds.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kTracePreserving = 1e-10;
inline constexpr double kEigCluster = 1e-8;       // absolute, integer spectra in scope
inline constexpr double kGroupClosure = 1e-8;
inline constexpr double kFreeze = 1e-9;           // bits, default freezing tolerance
}  // namespace tol

// Runtime-adjustable settings. Defaults reproduce the documented behaviour;
// tests may tweak and must restore.
struct NumericSettings {
    // Numerical-rank rule: eigenvalues with magnitude <= zero_scale * max(1, lambda_max)
    // count as zero (kernel/support split, entropy sums, pseudoinverses).
    double zero_scale = 1e-12;
    // Entropy unit: log base 2 (bits) by default; set to natural log for nats.
    // Scales every entropic output (von Neumann, relative entropy, A_r).
    bool entropy_in_bits = true;
};

NumericSettings& settings();

// Zero threshold for a spectrum whose largest magnitude is lambda_max.
double zero_threshold(double lambda_max);

}  // namespace asym
