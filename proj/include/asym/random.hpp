#pragma once

// Deterministic random generation for property tests and the theorem harness.
// The uniform and Gaussian draws are built from raw engine output (no
// std::*_distribution), so a given seed produces the same stream on every
// standard library. Independent sub-streams derive from (seed, stream index),
// which keeps parallel trials schedule-independent.

#include <cstdint>
#include <random>

#include "asym/quantum.hpp"

namespace asym::rng {

class Prng {
  public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    // Deterministic sub-stream for trial `stream` of a run seeded with `seed`.
    static Prng substream(std::uint64_t seed, std::uint64_t stream);

    double uniform();   // [0, 1)
    double gaussian();  // standard normal, Box-Muller
    Complex complex_gaussian();

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// d x d matrix of independent complex standard Gaussians.
Matrix ginibre(Prng& gen, Index dim);

// Full-rank state G G^dagger / Tr(G G^dagger).
DensityMatrix random_density(Prng& gen, Index dim);

// Haar-ish unitary: QR of a Ginibre matrix with the phase convention fixed.
Matrix random_unitary(Prng& gen, Index dim);

// Random CPTP channel with `env_dim` Kraus operators: orthonormalize a
// Gaussian (dim*env_dim) x dim matrix into an isometry and slice it.
KrausChannel random_cptp(Prng& gen, Index dim, Index env_dim = 2);

}  // namespace asym::rng
