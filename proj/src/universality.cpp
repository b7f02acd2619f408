#include "asym/universality.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "asym/random.hpp"

namespace asym {

RecoveryMap petz_recovery(const KrausChannel& channel, const DensityMatrix& prior) {
    if (channel.dim() != prior.dim()) {
        throw DimMismatchError("petz_recovery: channel and prior dimensions differ");
    }
    DensityMatrix evolved = apply_channel(channel, prior);
    const Matrix sqrt_prior =
        func_hermitian(prior.matrix(), [](double x) { return std::sqrt(x); },
                       /*support_only=*/true);
    const Matrix inv_sqrt_evolved = pinv_sqrt(evolved.matrix());

    std::vector<Matrix> ops;
    ops.reserve(channel.ops().size() + 1);
    for (const Matrix& k : channel.ops()) {
        ops.push_back(sqrt_prior * k.adjoint() * inv_sqrt_evolved);
    }

    const Matrix kernel = kernel_projector(evolved.matrix());
    RecoveryBranch branch = RecoveryBranch::invertible;
    if (kernel.trace().real() > 0.5) {
        ops.push_back(kernel);
        branch = RecoveryBranch::kernel_augmented;
    }

    // The construction is trace preserving whenever the algebra is healthy;
    // a residual above 1e-8 signals numerical degeneracy and is an error.
    KrausChannel recovery = KrausChannel::cptp(std::move(ops), 1e-8);
    return RecoveryMap{std::move(recovery), prior, std::move(evolved), branch};
}

RecoveryResiduals verify_recovery(const RecoveryMap& recovery, const DensityMatrix& rho_t,
                                  const DensityMatrix& rho_0) {
    if (rho_t.dim() != recovery.channel.dim() || rho_0.dim() != recovery.channel.dim()) {
        throw DimMismatchError("verify_recovery: dimension mismatch");
    }
    RecoveryResiduals residuals;
    residuals.state_residual =
        trace_norm_distance(recovery.channel.apply_matrix(rho_t.matrix()), rho_0.matrix());
    residuals.prior_residual = trace_norm_distance(
        recovery.channel.apply_matrix(recovery.evolved_prior.matrix()),
        recovery.prior.matrix());
    return residuals;
}

bool FreezeReport::all_frozen() const {
    for (const auto& [id, is_frozen] : frozen) {
        if (!is_frozen) {
            return false;
        }
    }
    return true;
}

FreezeReport freezing_report(const SymmetryRep& rep,
                             std::span<const DensityMatrix> trajectory,
                             const std::vector<Measure>& measures, double tolerance,
                             const std::vector<KrausChannel>* cumulative_channels) {
    if (trajectory.empty()) {
        throw EmptyTrajectoryError("freezing_report: trajectory is empty");
    }
    for (const DensityMatrix& rho : trajectory) {
        if (rho.dim() != rep.dim()) {
            throw DimMismatchError("freezing_report: trajectory dimension mismatch");
        }
    }
    if (cumulative_channels != nullptr && cumulative_channels->size() != trajectory.size()) {
        throw DimMismatchError("freezing_report: need one cumulative channel per step");
    }

    const DensityMatrix prior = twirl(rep, trajectory[0]);
    const std::ptrdiff_t steps = static_cast<std::ptrdiff_t>(trajectory.size());
    FreezeReport report;
    report.tolerance = tolerance;
    report.steps.resize(trajectory.size());

    // Steps are independent; slots keep the result schedule-independent.
    std::exception_ptr failure;
#pragma omp parallel for schedule(static) if (steps > 1)
    for (std::ptrdiff_t t = 0; t < steps; ++t) {
        try {
            FreezeStep step;
            step.index = static_cast<int>(t);
            for (const Measure& measure : measures) {
                step.values.push_back(
                    {measure.id, measure.evaluate(rep, trajectory[static_cast<std::size_t>(t)])});
            }
            if (cumulative_channels != nullptr) {
                const RecoveryMap recovery =
                    petz_recovery((*cumulative_channels)[static_cast<std::size_t>(t)], prior);
                step.recovery_residual =
                    verify_recovery(recovery, trajectory[static_cast<std::size_t>(t)],
                                    trajectory[0])
                        .state_residual;
            }
            report.steps[static_cast<std::size_t>(t)] = std::move(step);
        } catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    for (std::size_t m = 0; m < measures.size(); ++m) {
        const double reference = report.steps[0].values[m].value;
        double max_dev = 0.0;
        for (const FreezeStep& step : report.steps) {
            max_dev = std::max(max_dev, std::abs(step.values[m].value - reference));
        }
        report.frozen.emplace_back(measures[m].id, max_dev <= tolerance);
        report.max_deviation.emplace_back(measures[m].id, max_dev);
    }
    return report;
}

namespace {

KrausChannel make_trial_channel(TrialChannelKind kind, const SymmetryRep& rep, rng::Prng& gen) {
    const Index d = rep.dim();
    switch (kind) {
        case TrialChannelKind::identity:
            return KrausChannel::cptp({Matrix::Identity(d, d)});
        case TrialChannelKind::group_unitary: {
            const std::size_t count = rep.unitaries().size();
            const std::size_t pick =
                std::min(count - 1, static_cast<std::size_t>(gen.uniform() * count));
            return KrausChannel::cptp({rep.unitaries()[pick]});
        }
        case TrialChannelKind::random_covariant:
            break;
    }
    return group_average_channel(rep, rng::random_cptp(gen, d, 2));
}

struct TrialRecord {
    double ar_drop = 0.0;
    bool frozen = false;
    bool near_frozen = false;
    bool monotonicity_violation = false;
    bool sandwich_violation = false;
    bool implication_violation = false;
    double measure_deviation = 0.0;  // only meaningful when frozen
    double recovery_residual = 0.0;  // only meaningful when frozen
};

TrialRecord run_trial(const SymmetryRep& rep, const std::vector<Measure>& measures, Index dim,
                      std::uint64_t seed, int trial, TrialChannelKind kind) {
    rng::Prng gen = rng::Prng::substream(seed, static_cast<std::uint64_t>(trial));
    const DensityMatrix rho_0 = rng::random_density(gen, dim);
    const KrausChannel lambda = make_trial_channel(kind, rep, gen);

    const DensityMatrix delta_0 = twirl(rep, rho_0);
    const DensityMatrix rho_t = apply_channel(lambda, rho_0);
    const DensityMatrix delta_t = apply_channel(lambda, delta_0);

    const double ar_0 = rel_entropy_asymmetry(rep, rho_0);
    const double ar_t = rel_entropy_asymmetry(rep, rho_t);
    const double change = ar_t - ar_0;

    TrialRecord record;
    record.ar_drop = ar_0 - ar_t;
    record.monotonicity_violation = change > theorem::kMonotonicitySlack;

    // Ar(rho_t) <= S(Lambda(rho_0) || Lambda(delta_0)) <= S(rho_0 || delta_0) = Ar(rho_0)
    const double middle = relative_entropy(rho_t, delta_t);
    const double right = relative_entropy(rho_0, delta_0);
    record.sandwich_violation = !(ar_t <= middle + theorem::kSandwichSlack) ||
                                !(middle <= right + theorem::kSandwichSlack) ||
                                !(std::abs(right - ar_0) <= theorem::kSandwichSlack);

    if (std::abs(change) <= theorem::kFrozenTrigger) {
        record.frozen = true;
        for (const Measure& measure : measures) {
            const double deviation =
                std::abs(measure.evaluate(rep, rho_t) - measure.evaluate(rep, rho_0));
            record.measure_deviation = std::max(record.measure_deviation, deviation);
        }
        const RecoveryMap recovery = petz_recovery(lambda, delta_0);
        record.recovery_residual = verify_recovery(recovery, rho_t, rho_0).state_residual;
        record.implication_violation = record.measure_deviation > theorem::kConsequenceBound ||
                                       record.recovery_residual > theorem::kConsequenceBound;
    } else if (std::abs(change) <= theorem::kNearFrozenBand) {
        record.near_frozen = true;
    }
    return record;
}

}  // namespace

TheoremCheckStats theorem_check(const SymmetryRep& rep, int trials, Index dim,
                                std::uint64_t seed, TrialChannelKind kind) {
    if (!rep.is_finite()) {
        throw WrongVariantError("theorem_check: finite representations only");
    }
    if (rep.dim() != dim) {
        throw DimMismatchError("theorem_check: representation dimension " +
                               std::to_string(rep.dim()) + " does not match requested " +
                               std::to_string(dim));
    }
    if (trials < 0) {
        throw OutOfRangeError("theorem_check: trial count must be nonnegative");
    }

    const std::vector<Measure> measures = measure_registry(rep);
    std::vector<TrialRecord> records(static_cast<std::size_t>(trials));
    std::exception_ptr failure;

#pragma omp parallel for schedule(static) if (trials > 1)
    for (int trial = 0; trial < trials; ++trial) {
        try {
            records[static_cast<std::size_t>(trial)] =
                run_trial(rep, measures, dim, seed, trial, kind);
        } catch (...) {
#pragma omp critical
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    TheoremCheckStats stats;
    stats.trials = trials;
    for (const TrialRecord& record : records) {
        stats.max_ar_drop = std::max(stats.max_ar_drop, record.ar_drop);
        stats.frozen_count += record.frozen ? 1 : 0;
        stats.near_frozen_count += record.near_frozen ? 1 : 0;
        stats.monotonicity_violations += record.monotonicity_violation ? 1 : 0;
        stats.sandwich_violations += record.sandwich_violation ? 1 : 0;
        if (record.frozen) {
            stats.max_measure_deviation =
                std::max(stats.max_measure_deviation, record.measure_deviation);
            stats.max_recovery_residual =
                std::max(stats.max_recovery_residual, record.recovery_residual);
            stats.frozen_implication_violations += record.implication_violation ? 1 : 0;
        }
    }
    return stats;
}

}  // namespace asym
