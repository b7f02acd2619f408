#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "asym/random.hpp"
#include "asym/scenarios.hpp"
#include "asym/universality.hpp"
#include "test_support.hpp"

using namespace asym;

namespace {

const SymmetryRep& z6() {
    static const SymmetryRep rep = cyclic(6, 6, {0, 1, 2, 3, 4, 5});
    return rep;
}

// Random convex mixture of group unitaries: covariant and kernel-preserving
// on symmetric priors, which keeps the evolved prior rank deficient.
KrausChannel random_unitary_mixture(rng::Prng& gen, const SymmetryRep& rep) {
    const std::vector<Matrix>& us = rep.unitaries();
    std::vector<double> weights(us.size());
    double total = 0.0;
    for (double& w : weights) {
        w = gen.uniform() + 1e-3;
        total += w;
    }
    std::vector<Matrix> ops;
    for (std::size_t g = 0; g < us.size(); ++g) {
        ops.push_back(std::sqrt(weights[g] / total) * us[g]);
    }
    return KrausChannel::cptp(std::move(ops));
}

DensityMatrix symmetric_full_rank(rng::Prng& gen, const SymmetryRep& rep) {
    return twirl(rep, rng::random_density(gen, rep.dim()));
}

// Symmetric (diagonal for the cyclic rep) state with exactly one zero weight.
DensityMatrix symmetric_rank_deficient(rng::Prng& gen, Index dim) {
    RealVector weights(dim);
    double total = 0.0;
    for (Index i = 0; i < dim; ++i) {
        weights[i] = gen.uniform() + 0.05;
        total += weights[i];
    }
    const Index hole = static_cast<Index>(gen.uniform() * dim) % dim;
    total -= weights[hole];
    weights[hole] = 0.0;
    Matrix m = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        m(i, i) = weights[i] / total;
    }
    return validate_density(m);
}

}  // namespace

TEST_CASE("petz_recovery of the identity channel is the identity") {
    rng::Prng gen(61);
    const DensityMatrix prior = rng::random_density(gen, 4);
    const KrausChannel identity = KrausChannel::cptp({Matrix::Identity(4, 4)});
    const RecoveryMap recovery = petz_recovery(identity, prior);
    CHECK(recovery.branch == RecoveryBranch::invertible);
    CHECK(action_residual(recovery.channel, identity) <= 1e-10);

    const DensityMatrix rho = rng::random_density(gen, 4);
    const RecoveryResiduals residuals = verify_recovery(recovery, rho, rho);
    CHECK(residuals.state_residual <= 1e-12);
    CHECK(residuals.prior_residual <= 1e-12);
}

TEST_CASE("petz_recovery inverts the worked two-qubit evolution") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho_0 = example1_state(inv_sqrt2, inv_sqrt2);
    const SymmetryRep rep = two_qubit_u1();
    const DensityMatrix delta_0 = twirl(rep, rho_0);

    const KrausChannel channel = example1_channel(0.25);
    const DensityMatrix rho_t = apply_channel(channel, rho_0);
    const RecoveryMap recovery = petz_recovery(channel, delta_0);

    const RecoveryResiduals residuals = verify_recovery(recovery, rho_t, rho_0);
    CHECK(residuals.state_residual <= 1e-9);
    CHECK(residuals.prior_residual <= 1e-9);
    CHECK(validate_cptp(recovery.channel).tp_residual <= 1e-9);
    CHECK(is_covariant(rep, recovery.channel, 1e-8).holds);
}

TEST_CASE("composing recovery after evolution fixes the frozen state") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const SymmetryRep rep = two_qubit_u1();
    const DensityMatrix rho_0 = example1_state(inv_sqrt2, inv_sqrt2);
    const DensityMatrix delta_0 = twirl(rep, rho_0);

    const KrausChannel forward = example1_channel(0.6);
    const RecoveryMap recovery = petz_recovery(forward, delta_0);
    const KrausChannel round_trip = compose(recovery.channel, forward);
    const DensityMatrix back = apply_channel(round_trip, rho_0);
    CHECK(trace_norm_distance(back.matrix(), rho_0.matrix()) <= 1e-9);
}

TEST_CASE("verify_recovery reports the injected error for a wrong target") {
    rng::Prng gen(62);
    const DensityMatrix prior = rng::random_density(gen, 4);
    const KrausChannel identity = KrausChannel::cptp({Matrix::Identity(4, 4)});
    const RecoveryMap recovery = petz_recovery(identity, prior);

    const DensityMatrix rho = rng::random_density(gen, 4);
    const DensityMatrix wrong = rng::random_density(gen, 4);
    const RecoveryResiduals residuals = verify_recovery(recovery, rho, wrong);
    CHECK(residuals.state_residual ==
          doctest::Approx(trace_norm_distance(rho.matrix(), wrong.matrix())).epsilon(1e-9));
}

TEST_CASE("petz_recovery erected on random covariant channels") {
    rng::Prng gen(63);
    for (int rep_i = 0; rep_i < 10; ++rep_i) {
        const KrausChannel covariant =
            group_average_channel(z6(), rng::random_cptp(gen, 6, 2));
        const DensityMatrix prior = symmetric_full_rank(gen, z6());
        const RecoveryMap recovery = petz_recovery(covariant, prior);
        CHECK(verify_recovery(recovery, prior, prior).prior_residual <= 1e-9);
        CHECK(validate_cptp(recovery.channel).tp_residual <= 1e-9);
        CHECK(is_covariant(z6(), recovery.channel, 1e-8).holds);
    }
}

TEST_CASE("kernel-augmented branch handles rank-deficient evolved priors") {
    rng::Prng gen(64);
    for (int rep_i = 0; rep_i < 5; ++rep_i) {
        const DensityMatrix prior = symmetric_rank_deficient(gen, 6);
        const KrausChannel mixture = random_unitary_mixture(gen, z6());
        const RecoveryMap recovery = petz_recovery(mixture, prior);
        CHECK(recovery.branch == RecoveryBranch::kernel_augmented);
        CHECK(verify_recovery(recovery, prior, prior).prior_residual <= 1e-9);
        CHECK(validate_cptp(recovery.channel).tp_residual <= 1e-9);
        CHECK(is_covariant(z6(), recovery.channel, 1e-8).holds);
    }
}

TEST_CASE("freezing_report on a constant trajectory") {
    rng::Prng gen(65);
    const DensityMatrix rho = rng::random_density(gen, 6);
    const std::vector<DensityMatrix> trajectory{rho, rho, rho};
    const FreezeReport report =
        freezing_report(z6(), trajectory, measure_registry(z6()), 1e-9);
    CHECK(report.all_frozen());
    for (const auto& [id, dev] : report.max_deviation) {
        CHECK(dev == 0.0);
    }
    REQUIRE(report.steps.size() == 3);
    CHECK_FALSE(report.steps[0].recovery_residual.has_value());

    CHECK_THROWS_AS(
        freezing_report(z6(), std::vector<DensityMatrix>{}, measure_registry(z6()), 1e-9),
        EmptyTrajectoryError);
}

TEST_CASE("freezing_report detects a thawing trajectory") {
    rng::Prng gen(66);
    const DensityMatrix rho = rng::random_density(gen, 6);
    // Asymmetry strictly drops under a generic covariant channel.
    const KrausChannel covariant = group_average_channel(z6(), rng::random_cptp(gen, 6, 2));
    const std::vector<DensityMatrix> trajectory{rho, apply_channel(covariant, rho)};
    const FreezeReport report =
        freezing_report(z6(), trajectory, measure_registry(z6()), 1e-9);
    CHECK_FALSE(report.all_frozen());
}

TEST_CASE("freezing_report attaches recovery residuals when channels are supplied") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const SymmetryRep rep = two_qubit_u1();
    const DensityMatrix rho_0 = example1_state(inv_sqrt2, inv_sqrt2);

    std::vector<DensityMatrix> trajectory{rho_0};
    std::vector<KrausChannel> channels{KrausChannel::cptp({Matrix::Identity(4, 4)})};
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
        const KrausChannel channel = example1_channel(p);
        trajectory.push_back(apply_channel(channel, rho_0));
        channels.push_back(channel);
    }
    const FreezeReport report =
        freezing_report(rep, trajectory, measure_registry(rep), 1e-9, &channels);
    CHECK(report.all_frozen());
    for (const FreezeStep& step : report.steps) {
        REQUIRE(step.recovery_residual.has_value());
        CHECK(*step.recovery_residual <= 1e-9);
    }
}

TEST_CASE("freezing_report recovers the Fock reference frame while frozen") {
    // Cumulative measurement channels: the walk composed with itself. The
    // evolved prior is rank deficient at every step, so this drives the
    // kernel-augmented recovery branch end to end.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Example2Config config =
        Example2Config::make(3, {Complex(inv_sqrt2, 0.0), Complex(inv_sqrt2, 0.0)}, 2);
    const SymmetryRep rep = fock_u1(config.fock_dim);
    const std::vector<DensityMatrix> trajectory = example2_trajectory(config);

    const KrausChannel step = example2_channel(config.fock_dim);
    std::vector<KrausChannel> channels{
        KrausChannel::cptp({Matrix::Identity(config.fock_dim, config.fock_dim)})};
    channels.push_back(step);
    channels.push_back(compose(step, step));

    const FreezeReport report =
        freezing_report(rep, trajectory, measure_registry(rep), 1e-9, &channels);
    CHECK(report.all_frozen());
    for (const FreezeStep& freeze_step : report.steps) {
        REQUIRE(freeze_step.recovery_residual.has_value());
        CHECK(*freeze_step.recovery_residual <= 1e-9);
    }

    // The recovery map itself: kernel branch, trace preserving, covariant.
    const DensityMatrix prior = twirl(rep, trajectory[0]);
    const RecoveryMap recovery = petz_recovery(channels[2], prior);
    CHECK(recovery.branch == RecoveryBranch::kernel_augmented);
    CHECK(validate_cptp(recovery.channel).tp_residual <= 1e-9);
    CHECK(is_covariant(rep, recovery.channel, 1e-8).holds);
}

TEST_CASE("theorem_check: identity and unitary channels freeze everything") {
    const TheoremCheckStats identity = theorem_check(z6(), 10, 6, 7, TrialChannelKind::identity);
    CHECK(identity.frozen_count == 10);
    CHECK(identity.clean());
    CHECK(identity.max_recovery_residual <= 1e-10);
    CHECK(identity.max_measure_deviation <= 1e-12);

    const TheoremCheckStats unitary =
        theorem_check(z6(), 25, 6, 8, TrialChannelKind::group_unitary);
    CHECK(unitary.frozen_count == 25);
    CHECK(unitary.clean());
    CHECK(unitary.max_recovery_residual <= 1e-7);
    CHECK(unitary.max_measure_deviation <= 1e-7);
}

TEST_CASE("theorem_check: random covariant channels satisfy every inequality") {
    const TheoremCheckStats stats = theorem_check(z6(), 30, 6, 99);
    CHECK(stats.trials == 30);
    CHECK(stats.monotonicity_violations == 0);
    CHECK(stats.sandwich_violations == 0);
    CHECK(stats.frozen_implication_violations == 0);
    CHECK(stats.max_ar_drop > 0.0);  // generic channels genuinely destroy asymmetry

    CHECK_THROWS_AS(theorem_check(two_qubit_u1(), 1, 4, 1), WrongVariantError);
    CHECK_THROWS_AS(theorem_check(z6(), 1, 5, 1), DimMismatchError);
}

TEST_CASE("theorem_check is deterministic across seeds and thread counts") {
    const TheoremCheckStats a = theorem_check(z6(), 12, 6, 1234);
    const TheoremCheckStats b = theorem_check(z6(), 12, 6, 1234);
    CHECK(a.max_ar_drop == b.max_ar_drop);
    CHECK(a.frozen_count == b.frozen_count);
    CHECK(a.near_frozen_count == b.near_frozen_count);

    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const TheoremCheckStats serial = theorem_check(z6(), 12, 6, 1234);
    omp_set_num_threads(saved);
    CHECK(serial.max_ar_drop == a.max_ar_drop);
    CHECK(serial.frozen_count == a.frozen_count);

    const TheoremCheckStats other = theorem_check(z6(), 12, 6, 4321);
    CHECK(other.max_ar_drop != a.max_ar_drop);
}
