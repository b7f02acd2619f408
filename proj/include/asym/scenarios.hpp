#pragma once

// Exact constructions of the two bundled scenarios: a two-qubit covariant
// time evolution with a noise parameter p, and phase-reference degradation in
// a truncated Fock space under repeated covariant measurements. Both come
// with analytic reference formulas for the frozen asymmetry value.

#include <vector>

#include "asym/quantum.hpp"
#include "asym/symmetry.hpp"

namespace asym {

// ---- Two-qubit time evolution ----

// Kraus list {sqrt(1-p) I, sqrt(p) sigma_z (x) sigma_+, sqrt(p) sigma_z (x) sigma_-}
// on the 4-dimensional two-qubit space; exactly trace preserving for any p.
KrausChannel example1_channel(double p);

// Pure state lambda_0 |00> + lambda_1 |10> as a density matrix.
DensityMatrix example1_state(Complex lambda_0, Complex lambda_1);

// Frozen value of the relative entropy of asymmetry for the state above,
// -sum_m |lambda_m|^2 log |lambda_m|^2; independent of p.
double example1_expected_ar(Complex lambda_0, Complex lambda_1);

// ---- Fock-space phase reference under repeated measurement ----

struct Example2Config {
    int level_spacing = 3;              // gap between occupied levels
    std::vector<Complex> amplitudes;    // one per occupied level, unit norm
    int t_max = 2;                      // number of measurements to simulate
    Index fock_dim = 0;                 // truncation dimension

    int num_components() const { return static_cast<int>(amplitudes.size()); }

    // Smallest truncation that keeps the top truncation level strictly
    // outside the reachable support for t_max steps.
    static Index auto_fock_dim(int level_spacing, int num_components, int t_max);

    // Validates all invariants; fock_dim <= 0 selects the auto rule.
    static Example2Config make(int level_spacing, std::vector<Complex> amplitudes, int t_max,
                               Index fock_dim = 0);
};

// Single-measurement update channel on the truncated Fock space:
// {sqrt(1/2) I, (1/2)|0><0|, (1/2) A^dagger, (1/2) A} with the lowering
// operator A = sum |n><n+1|. Trace decreasing with deficit exactly
// (1/4)|d-1><d-1| from the truncation.
KrausChannel example2_channel(Index fock_dim);

// Initial pure state sum_m lambda_m |(2m+1) level_spacing>.
DensityMatrix example2_state(const Example2Config& config);

// Lazy-random-walk weight of offset n after t measurements:
// p_n(t) = sum_k C(t,k) C(t-k,k-n) (1/2)^(t-n+2k), k in [max(n,0), (t+n)/2].
double p_weight(int offset, int steps);

// [rho_0, Lambda(rho_0), ..., Lambda^t_max(rho_0)]; throws TraceLossError if
// any step loses more than 1e-9 of trace.
std::vector<DensityMatrix> example2_trajectory(const Example2Config& config);

// Closed-form mixture sum_n p_n(t) |phi_n><phi_n|, valid for t < level_spacing.
DensityMatrix example2_reference_state(const Example2Config& config, int t);

// Frozen value -sum_m |lambda_m|^2 log |lambda_m|^2, valid for t < level_spacing.
double example2_expected_ar(const std::vector<Complex>& amplitudes);

}  // namespace asym
