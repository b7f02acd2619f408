#include "asym/scenarios.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "asym/measures.hpp"

namespace asym {

namespace {

double entropy_of_weights(const std::vector<Complex>& amplitudes) {
    double norm = 0.0;
    for (const Complex& a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > tol::kNorm) {
        throw NotNormalizedError("amplitudes: sum |lambda|^2 = " + std::to_string(norm) +
                                 ", must be 1 within 1e-10");
    }
    double sum = 0.0;
    for (const Complex& a : amplitudes) {
        const double w = std::norm(a);
        if (w > 0.0) {
            sum -= w * std::log(w);
        }
    }
    return sum * entropy_unit_scale();
}

}  // namespace

KrausChannel example1_channel(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw OutOfRangeError("example1_channel: p must lie in [0, 1]");
    }
    Matrix sigma_z(2, 2), sigma_plus(2, 2), sigma_minus(2, 2);
    sigma_z << 1.0, 0.0, 0.0, -1.0;
    sigma_plus << 0.0, 0.0, 1.0, 0.0;   // |1><0|
    sigma_minus << 0.0, 1.0, 0.0, 0.0;  // |0><1|
    std::vector<Matrix> ops;
    ops.push_back(std::sqrt(1.0 - p) * Matrix::Identity(4, 4));
    ops.push_back(std::sqrt(p) * kron(sigma_z, sigma_plus));
    ops.push_back(std::sqrt(p) * kron(sigma_z, sigma_minus));
    // sigma_-+ algebra makes the completeness sum exactly I.
    return KrausChannel::cptp(std::move(ops), 1e-12);
}

DensityMatrix example1_state(Complex lambda_0, Complex lambda_1) {
    Vector psi = Vector::Zero(4);
    psi[0] = lambda_0;  // |00>
    psi[2] = lambda_1;  // |10>
    return density_from_pure(PureStateVector(std::move(psi)));
}

double example1_expected_ar(Complex lambda_0, Complex lambda_1) {
    return entropy_of_weights({lambda_0, lambda_1});
}

Index Example2Config::auto_fock_dim(int level_spacing, int num_components, int t_max) {
    return static_cast<Index>((2 * num_components - 1) * level_spacing + t_max + 2);
}

Example2Config Example2Config::make(int level_spacing, std::vector<Complex> amplitudes,
                                    int t_max, Index fock_dim) {
    if (level_spacing < 1) {
        throw OutOfRangeError("Example2Config: level spacing must be positive");
    }
    if (amplitudes.empty()) {
        throw OutOfRangeError("Example2Config: need at least one amplitude");
    }
    if (t_max < 0) {
        throw OutOfRangeError("Example2Config: t_max must be nonnegative");
    }
    double norm = 0.0;
    for (const Complex& a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > tol::kNorm) {
        throw NotNormalizedError("Example2Config: amplitudes must have unit norm");
    }
    const Index required =
        auto_fock_dim(level_spacing, static_cast<int>(amplitudes.size()), t_max);
    if (fock_dim <= 0) {
        fock_dim = required;
    } else if (fock_dim < required) {
        throw GuardBandError("Example2Config: fock_dim " + std::to_string(fock_dim) +
                             " below the guard band minimum " + std::to_string(required));
    }
    Example2Config config;
    config.level_spacing = level_spacing;
    config.amplitudes = std::move(amplitudes);
    config.t_max = t_max;
    config.fock_dim = fock_dim;
    return config;
}

KrausChannel example2_channel(Index fock_dim) {
    if (fock_dim < 2) {
        throw OutOfRangeError("example2_channel: need at least two Fock levels");
    }
    Matrix lower = Matrix::Zero(fock_dim, fock_dim);  // A = sum |n><n+1|
    for (Index n = 0; n + 1 < fock_dim; ++n) {
        lower(n, n + 1) = 1.0;
    }
    Matrix vacuum = Matrix::Zero(fock_dim, fock_dim);
    vacuum(0, 0) = 1.0;
    std::vector<Matrix> ops;
    ops.push_back(std::sqrt(0.5) * Matrix::Identity(fock_dim, fock_dim));
    ops.push_back(0.5 * vacuum);
    ops.push_back(0.5 * lower.adjoint());
    ops.push_back(0.5 * lower);
    // Truncation deficit: I - sum K^dagger K = (1/4)|d-1><d-1|.
    return KrausChannel::trace_decreasing(std::move(ops), 0.25);
}

DensityMatrix example2_state(const Example2Config& config) {
    const Index top =
        static_cast<Index>((2 * config.num_components() - 1) * config.level_spacing);
    if (top >= config.fock_dim) {
        throw GuardBandError("example2_state: top occupied level exceeds fock_dim");
    }
    Vector psi = Vector::Zero(config.fock_dim);
    for (int m = 0; m < config.num_components(); ++m) {
        psi[(2 * m + 1) * config.level_spacing] = config.amplitudes[static_cast<std::size_t>(m)];
    }
    return density_from_pure(PureStateVector(std::move(psi)));
}

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

}  // namespace

double p_weight(int offset, int steps) {
    if (steps < 0 || std::abs(offset) > steps) {
        throw OutOfRangeError("p_weight: need |offset| <= steps");
    }
    // k is a nonnegative integer, so the binding lower bound is max(offset, 0).
    double sum = 0.0;
    for (int k = std::max(offset, 0); 2 * k <= steps + offset; ++k) {
        sum += binomial(steps, k) * binomial(steps - k, k - offset) *
               std::pow(0.5, steps - offset + 2 * k);
    }
    return sum;
}

std::vector<DensityMatrix> example2_trajectory(const Example2Config& config) {
    const KrausChannel channel = example2_channel(config.fock_dim);
    std::vector<DensityMatrix> trajectory;
    trajectory.reserve(static_cast<std::size_t>(config.t_max) + 1);
    trajectory.push_back(example2_state(config));
    for (int t = 1; t <= config.t_max; ++t) {
        DensityMatrix next = apply_channel(channel, trajectory.back());
        const double loss = 1.0 - next.trace_real();
        if (loss > 1e-9) {
            throw TraceLossError("example2_trajectory: trace dropped below 1 - 1e-9 at step " +
                                     std::to_string(t),
                                 loss);
        }
        trajectory.push_back(std::move(next));
    }
    return trajectory;
}

DensityMatrix example2_reference_state(const Example2Config& config, int t) {
    if (t < 0 || t >= config.level_spacing) {
        throw OutOfRangeError(
            "example2_reference_state: closed form is valid for 0 <= t < level spacing");
    }
    Matrix mix = Matrix::Zero(config.fock_dim, config.fock_dim);
    for (int n = -t; n <= t; ++n) {
        Vector phi = Vector::Zero(config.fock_dim);
        for (int m = 0; m < config.num_components(); ++m) {
            phi[(2 * m + 1) * config.level_spacing + n] =
                config.amplitudes[static_cast<std::size_t>(m)];
        }
        mix.noalias() += p_weight(n, t) * (phi * phi.adjoint());
    }
    return DensityMatrix(std::move(mix));
}

double example2_expected_ar(const std::vector<Complex>& amplitudes) {
    return entropy_of_weights(amplitudes);
}

}  // namespace asym
