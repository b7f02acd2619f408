#pragma once

// Symmetry representations, G-twirling, the symmetric-state and
// covariant-channel predicates, and covariant-channel generation.
//
// Two representation variants are supported: a finite set of unitaries closed
// under the group product and a one-parameter U(1) group given by a Hermitian
// generator. The U(1) twirl is computed exactly as the eigenspace pinch of the
// generator (the closed form of the Haar average), never by numerical
// integration.

#include <vector>

#include "asym/quantum.hpp"
#include "asym/types.hpp"

namespace asym {

struct EigenBlock {
    double eigenvalue;
    Matrix basis;  // d x k, orthonormal columns spanning the eigenspace
};

struct EigenBlockStructure {
    std::vector<EigenBlock> blocks;
    Index dim = 0;

    Matrix projector(std::size_t block) const;
};

// Clusters the spectrum with absolute tolerance 1e-8 (generators in scope have
// integer spectra; the tolerance only absorbs roundoff).
EigenBlockStructure eigenblocks(const Matrix& hermitian);

class SymmetryRep {
  public:
    // Unitarity is checked per element; closure is checked on the product
    // table; duplicates within 1e-8 are merged.
    static SymmetryRep finite(std::vector<Matrix> unitaries);

    // U_theta = exp(i theta N) for a Hermitian generator N.
    static SymmetryRep one_parameter(Matrix generator);

    bool is_finite() const { return finite_; }
    Index dim() const { return dim_; }

    // Finite variant only.
    const std::vector<Matrix>& unitaries() const;

    // One-parameter variant only.
    const Matrix& generator() const;
    const EigenBlockStructure& generator_blocks() const;

  private:
    SymmetryRep() = default;

    bool finite_ = false;
    Index dim_ = 0;
    std::vector<Matrix> unitaries_;
    Matrix generator_;
    EigenBlockStructure blocks_;
};

// exp(i theta N) via the spectral decomposition of the generator.
Matrix unitary_from_generator(const Matrix& generator, double theta);

// Deterministic angle grid used by the one-parameter covariance check:
// theta_k = k pi/6 + 1/7, k = 0..11. The irrational offset avoids accidental
// degeneracies at special angles.
std::vector<double> covariance_angle_grid();

// G-twirl. Finite: (1/|G|) sum_g U_g rho U_g^dagger. One-parameter: the pinch
// sum_i P_i rho P_i over the generator's eigenspaces.
DensityMatrix twirl(const SymmetryRep& rep, const DensityMatrix& rho);

// Twirl of an arbitrary matrix (no state validation); the linear map behind
// twirl().
Matrix twirl_matrix(const SymmetryRep& rep, const Matrix& x);

struct SymmetryCheck {
    bool holds = false;
    double residual = 0.0;
};

// Finite: max_g ||U_g rho U_g^dagger - rho||_F. One-parameter: ||[rho, N]||_F.
SymmetryCheck is_symmetric(const SymmetryRep& rep, const DensityMatrix& rho,
                           double tolerance = tol::kPsd);

// Covariance predicate of a channel: residuals of Lambda(U E U^dagger) vs
// U Lambda(E) U^dagger over all group elements (finite) or the fixed angle
// grid (one-parameter), and all matrix units E.
SymmetryCheck is_covariant(const SymmetryRep& rep, const KrausChannel& channel,
                           double tolerance = 1e-9);

// (1/sqrt|G|) U_g^dagger K_n U_g over all (g, n): projects any channel onto a
// covariant one. Finite reps only.
KrausChannel group_average_channel(const SymmetryRep& rep, const KrausChannel& channel);

// Built-in representations.
SymmetryRep two_qubit_u1();                 // generator sigma_z (x) I + I (x) sigma_z, dim 4
SymmetryRep fock_u1(Index dim);             // generator diag(0, 1, ..., dim-1)
SymmetryRep cyclic(int order, Index dim, const std::vector<int>& charges);

}  // namespace asym
