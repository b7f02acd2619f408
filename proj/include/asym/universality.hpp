#pragma once

// Covariant Petz recovery construction, freezing detection along
// trajectories, and the randomized harness for the freezing equivalence:
// the relative entropy of asymmetry is frozen iff every asymmetry measure is.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asym/measures.hpp"
#include "asym/quantum.hpp"
#include "asym/symmetry.hpp"

namespace asym {

enum class RecoveryBranch {
    invertible,        // evolved prior has full support
    kernel_augmented,  // extra Kraus operator: projector onto the kernel of delta_t
};

struct RecoveryMap {
    KrausChannel channel;
    DensityMatrix prior;           // delta_0
    DensityMatrix evolved_prior;   // delta_t = Lambda_t(delta_0)
    RecoveryBranch branch = RecoveryBranch::invertible;
};

// Builds the recovery channel with Kraus operators
// delta_0^{1/2} K_n^dagger delta_t^{-1/2} (pseudoinverse square root), plus
// the kernel projector of delta_t when delta_t is rank deficient. Throws
// NotTracePreservingError if the construction fails CPTP at 1e-8.
RecoveryMap petz_recovery(const KrausChannel& channel, const DensityMatrix& prior);

struct RecoveryResiduals {
    double state_residual = 0.0;  // trace distance R(rho_t) vs rho_0
    double prior_residual = 0.0;  // trace distance R(delta_t) vs delta_0
};

RecoveryResiduals verify_recovery(const RecoveryMap& recovery, const DensityMatrix& rho_t,
                                  const DensityMatrix& rho_0);

struct FreezeStep {
    int index = 0;
    std::vector<MeasureValue> values;
    // Trace distance of the Petz-recovered state from the initial state;
    // absent when no channel family was supplied.
    std::optional<double> recovery_residual;
};

struct FreezeReport {
    std::vector<FreezeStep> steps;
    // Per measure id: max_t |m(rho_t) - m(rho_0)| <= tolerance.
    std::vector<std::pair<std::string, bool>> frozen;
    std::vector<std::pair<std::string, double>> max_deviation;
    double tolerance = tol::kFreeze;

    bool all_frozen() const;
};

// Evaluates every registered measure at every trajectory point. When
// cumulative_channels is supplied (channel i maps trajectory[0] to
// trajectory[i]), also evaluates the Petz recovery residual per step with
// prior twirl(trajectory[0]).
FreezeReport freezing_report(const SymmetryRep& rep,
                             std::span<const DensityMatrix> trajectory,
                             const std::vector<Measure>& measures, double tolerance,
                             const std::vector<KrausChannel>* cumulative_channels = nullptr);

enum class TrialChannelKind {
    random_covariant,  // group average of a random CPTP map (default)
    group_unitary,     // single Kraus operator drawn from the representation
    identity,
};

struct TheoremCheckStats {
    int trials = 0;
    int frozen_count = 0;       // |dAr| <= frozen trigger
    int near_frozen_count = 0;  // trigger < |dAr| <= 1e-6 band, reported only
    double max_ar_drop = 0.0;   // largest decrease Ar(rho_0) - Ar(rho_t)
    double max_measure_deviation = 0.0;   // among frozen trials
    double max_recovery_residual = 0.0;   // among frozen trials
    int monotonicity_violations = 0;      // Ar increased beyond slack
    int frozen_implication_violations = 0;
    int sandwich_violations = 0;

    bool clean() const {
        return monotonicity_violations == 0 && frozen_implication_violations == 0 &&
               sandwich_violations == 0;
    }
};

// Tolerances of the harness. The frozen trigger is tighter than the
// consequence bound so roundoff in Ar cannot demand impossible precision
// downstream.
namespace theorem {
inline constexpr double kFrozenTrigger = 1e-10;
inline constexpr double kConsequenceBound = 1e-7;
inline constexpr double kMonotonicitySlack = 1e-9;
inline constexpr double kSandwichSlack = 1e-9;
inline constexpr double kNearFrozenBand = 1e-6;
}  // namespace theorem

// Seeded randomized check of the freezing equivalence on a finite
// representation. Per trial: random state, covariant channel of the requested
// kind, monotonicity and sandwich verification, and - when Ar is frozen -
// deviation bounds for every registered measure plus Petz recovery of the
// input state. Trials run concurrently; each derives its own sub-seed.
TheoremCheckStats theorem_check(const SymmetryRep& rep, int trials, Index dim,
                                std::uint64_t seed,
                                TrialChannelKind kind = TrialChannelKind::random_covariant);

}  // namespace asym
