#include "asym/random.hpp"

#include <cmath>
#include <numbers>

namespace asym::rng {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

Prng Prng::substream(std::uint64_t seed, std::uint64_t stream) {
    return Prng(splitmix64(seed ^ splitmix64(stream + 1)));
}

double Prng::uniform() {
    // 53 random bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Prng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

Complex Prng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
}

Matrix ginibre(Prng& gen, Index dim) {
    Matrix g(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index j = 0; j < dim; ++j) {
            g(i, j) = gen.complex_gaussian();
        }
    }
    return g;
}

DensityMatrix random_density(Prng& gen, Index dim) {
    const Matrix g = ginibre(gen, dim);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

Matrix random_unitary(Prng& gen, Index dim) {
    const Matrix g = ginibre(gen, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase freedom so the map Ginibre -> unitary is well defined.
    for (Index j = 0; j < dim; ++j) {
        const Complex diag = r(j, j);
        if (std::abs(diag) > 0.0) {
            q.col(j) *= diag / std::abs(diag);
        }
    }
    return q;
}

KrausChannel random_cptp(Prng& gen, Index dim, Index env_dim) {
    if (dim < 1 || env_dim < 1) {
        throw OutOfRangeError("random_cptp: dimensions must be positive");
    }
    // Orthonormal columns of a (dim*env_dim) x dim Gaussian give an isometry
    // V with V^dagger V = I; its row blocks are the Kraus operators.
    Matrix g(dim * env_dim, dim);
    for (Index i = 0; i < g.rows(); ++i) {
        for (Index j = 0; j < g.cols(); ++j) {
            g(i, j) = gen.complex_gaussian();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix isometry = qr.householderQ() * Matrix::Identity(dim * env_dim, dim);
    std::vector<Matrix> ops;
    ops.reserve(static_cast<std::size_t>(env_dim));
    for (Index block = 0; block < env_dim; ++block) {
        ops.push_back(isometry.middleRows(block * dim, dim));
    }
    return KrausChannel::cptp(std::move(ops), 1e-12);
}

}  // namespace asym::rng
