#include "asym/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "asym/kernels.hpp"

namespace asym {

Matrix EigenBlockStructure::projector(std::size_t block) const {
    const Matrix& basis = blocks.at(block).basis;
    return basis * basis.adjoint();
}

EigenBlockStructure eigenblocks(const Matrix& hermitian) {
    HermitianEig eig = eig_hermitian(hermitian);
    EigenBlockStructure out;
    out.dim = hermitian.rows();
    Index start = 0;
    for (Index i = 1; i <= eig.eigenvalues.size(); ++i) {
        const bool boundary =
            i == eig.eigenvalues.size() ||
            eig.eigenvalues[i] - eig.eigenvalues[i - 1] > tol::kEigCluster;
        if (!boundary) {
            continue;
        }
        const Index width = i - start;
        EigenBlock block;
        block.eigenvalue = eig.eigenvalues.segment(start, width).mean();
        block.basis = eig.eigenvectors.middleCols(start, width);
        out.blocks.push_back(std::move(block));
        start = i;
    }
    return out;
}

SymmetryRep SymmetryRep::finite(std::vector<Matrix> unitaries) {
    if (unitaries.empty()) {
        throw ShapeMismatchError("SymmetryRep::finite: need at least one unitary");
    }
    const Index d = unitaries.front().rows();
    for (const Matrix& u : unitaries) {
        require_finite(u, "SymmetryRep::finite");
        if (u.rows() != d || u.cols() != d) {
            throw ShapeMismatchError("SymmetryRep::finite: all unitaries must be d x d");
        }
        if (frobenius(u.adjoint() * u - Matrix::Identity(d, d)) > tol::kHermitian * std::sqrt(d)) {
            throw Error("SymmetryRep::finite: element is not unitary within 1e-10");
        }
    }
    // Merge duplicates, then require closure on the product table.
    std::vector<Matrix> elements;
    auto find = [&](const Matrix& candidate) -> long {
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (frobenius(elements[i] - candidate) <= tol::kGroupClosure) {
                return static_cast<long>(i);
            }
        }
        return -1;
    };
    for (Matrix& u : unitaries) {
        if (find(u) < 0) {
            elements.push_back(std::move(u));
        }
    }
    for (const Matrix& a : elements) {
        for (const Matrix& b : elements) {
            if (find(a * b) < 0) {
                throw Error("SymmetryRep::finite: set is not closed under the group product");
            }
        }
    }
    SymmetryRep rep;
    rep.finite_ = true;
    rep.dim_ = d;
    rep.unitaries_ = std::move(elements);
    return rep;
}

SymmetryRep SymmetryRep::one_parameter(Matrix generator) {
    require_finite(generator, "SymmetryRep::one_parameter");
    if (!is_hermitian(generator)) {
        throw NotHermitianError("SymmetryRep::one_parameter: generator must be Hermitian");
    }
    SymmetryRep rep;
    rep.finite_ = false;
    rep.dim_ = generator.rows();
    rep.blocks_ = eigenblocks(generator);
    rep.generator_ = std::move(generator);
    return rep;
}

const std::vector<Matrix>& SymmetryRep::unitaries() const {
    if (!finite_) {
        throw WrongVariantError("SymmetryRep: unitaries() requires the finite variant");
    }
    return unitaries_;
}

const Matrix& SymmetryRep::generator() const {
    if (finite_) {
        throw WrongVariantError("SymmetryRep: generator() requires the one-parameter variant");
    }
    return generator_;
}

const EigenBlockStructure& SymmetryRep::generator_blocks() const {
    if (finite_) {
        throw WrongVariantError("SymmetryRep: generator_blocks() requires the one-parameter variant");
    }
    return blocks_;
}

Matrix unitary_from_generator(const Matrix& generator, double theta) {
    HermitianEig eig = eig_hermitian(generator);
    Vector phases(eig.eigenvalues.size());
    for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
        phases[i] = std::polar(1.0, theta * eig.eigenvalues[i]);
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

std::vector<double> covariance_angle_grid() {
    std::vector<double> grid(12);
    for (int k = 0; k < 12; ++k) {
        grid[static_cast<std::size_t>(k)] = k * std::numbers::pi / 6.0 + 1.0 / 7.0;
    }
    return grid;
}

Matrix twirl_matrix(const SymmetryRep& rep, const Matrix& x) {
    if (x.rows() != rep.dim() || x.cols() != rep.dim()) {
        throw DimMismatchError("twirl: dimension mismatch");
    }
    if (rep.is_finite()) {
        return kernels::conjugation_sum(rep.unitaries(), x) /
               static_cast<double>(rep.unitaries().size());
    }
    const EigenBlockStructure& blocks = rep.generator_blocks();
    std::vector<Matrix> projectors;
    projectors.reserve(blocks.blocks.size());
    for (std::size_t i = 0; i < blocks.blocks.size(); ++i) {
        projectors.push_back(blocks.projector(i));
    }
    return kernels::conjugation_sum(projectors, x);
}

DensityMatrix twirl(const SymmetryRep& rep, const DensityMatrix& rho) {
    return DensityMatrix(twirl_matrix(rep, rho.matrix()));
}

SymmetryCheck is_symmetric(const SymmetryRep& rep, const DensityMatrix& rho, double tolerance) {
    if (rho.dim() != rep.dim()) {
        throw DimMismatchError("is_symmetric: dimension mismatch");
    }
    double residual = 0.0;
    if (rep.is_finite()) {
        const std::vector<Matrix>& us = rep.unitaries();
        residual = kernels::max_over_tasks(us.size(), [&](std::size_t g) {
            return frobenius(us[g] * rho.matrix() * us[g].adjoint() - rho.matrix());
        });
    } else {
        const Matrix& n = rep.generator();
        residual = frobenius(rho.matrix() * n - n * rho.matrix());
    }
    return SymmetryCheck{residual <= tolerance, residual};
}

SymmetryCheck is_covariant(const SymmetryRep& rep, const KrausChannel& channel,
                           double tolerance) {
    if (channel.dim() != rep.dim()) {
        throw DimMismatchError("is_covariant: dimension mismatch");
    }
    std::vector<Matrix> group;
    if (rep.is_finite()) {
        group = rep.unitaries();
    } else {
        for (double theta : covariance_angle_grid()) {
            group.push_back(unitary_from_generator(rep.generator(), theta));
        }
    }
    const Index d = rep.dim();
    const std::size_t units = static_cast<std::size_t>(d * d);
    const double residual =
        kernels::max_over_tasks(group.size() * units, [&](std::size_t task) {
            const Matrix& u = group[task / units];
            const std::size_t unit = task % units;
            const Index i = static_cast<Index>(unit) / d;
            const Index j = static_cast<Index>(unit) % d;
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1.0;
            const Matrix lhs = channel.apply_matrix(u * e * u.adjoint());
            const Matrix rhs = u * channel.apply_matrix(e) * u.adjoint();
            return frobenius(lhs - rhs);
        });
    return SymmetryCheck{residual <= tolerance, residual};
}

KrausChannel group_average_channel(const SymmetryRep& rep, const KrausChannel& channel) {
    if (!rep.is_finite()) {
        throw WrongVariantError("group_average_channel: finite representations only");
    }
    if (channel.dim() != rep.dim()) {
        throw DimMismatchError("group_average_channel: dimension mismatch");
    }
    const std::vector<Matrix>& us = rep.unitaries();
    const double scale = 1.0 / std::sqrt(static_cast<double>(us.size()));
    std::vector<Matrix> ops;
    ops.reserve(us.size() * channel.ops().size());
    for (const Matrix& u : us) {
        for (const Matrix& k : channel.ops()) {
            ops.push_back(scale * (u.adjoint() * k * u));
        }
    }
    // Group conjugation preserves the completeness sum, so the status carries over.
    switch (channel.status()) {
        case TpStatus::trace_preserving:
            return KrausChannel::cptp(std::move(ops), channel.tp_tolerance());
        case TpStatus::trace_decreasing:
            return KrausChannel::trace_decreasing(std::move(ops), channel.declared_deficit(),
                                                  channel.tp_tolerance());
        case TpStatus::general:
            break;
    }
    return KrausChannel::raw(std::move(ops), channel.tp_tolerance());
}

SymmetryRep two_qubit_u1() {
    Matrix sigma_z(2, 2);
    sigma_z << 1.0, 0.0, 0.0, -1.0;
    const Matrix eye = Matrix::Identity(2, 2);
    return SymmetryRep::one_parameter(kron(sigma_z, eye) + kron(eye, sigma_z));
}

SymmetryRep fock_u1(Index dim) {
    if (dim < 1) {
        throw OutOfRangeError("fock_u1: dimension must be positive");
    }
    Matrix n = Matrix::Zero(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        n(i, i) = static_cast<double>(i);
    }
    return SymmetryRep::one_parameter(std::move(n));
}

SymmetryRep cyclic(int order, Index dim, const std::vector<int>& charges) {
    if (order < 1 || dim < 1) {
        throw OutOfRangeError("cyclic: order and dimension must be positive");
    }
    if (static_cast<Index>(charges.size()) != dim) {
        throw DimMismatchError("cyclic: need one charge per basis vector");
    }
    std::vector<Matrix> us;
    us.reserve(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) {
        Matrix u = Matrix::Zero(dim, dim);
        for (Index j = 0; j < dim; ++j) {
            const double angle =
                2.0 * std::numbers::pi * charges[static_cast<std::size_t>(j)] * k / order;
            u(j, j) = std::polar(1.0, angle);
        }
        us.push_back(std::move(u));
    }
    return SymmetryRep::finite(std::move(us));
}

}  // namespace asym
