#include "asym/kernels.hpp"

#include <vector>

namespace asym::kernels {

Matrix conjugation_sum_serial(std::span<const Matrix> ops, const Matrix& x) {
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    Matrix term(x.rows(), x.cols());
    for (const Matrix& op : ops) {
        term.noalias() = op * x * op.adjoint();
        acc += term;
    }
    return acc;
}

Matrix conjugation_sum(std::span<const Matrix> ops, const Matrix& x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ops.size());
    if (n <= 4 || x.rows() < 24) {
        return conjugation_sum_serial(ops, x);
    }
    std::vector<Matrix> slots(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        slots[static_cast<std::size_t>(i)].noalias() =
            ops[static_cast<std::size_t>(i)] * x * ops[static_cast<std::size_t>(i)].adjoint();
    }
    // Combine in index order so the result does not depend on the schedule.
    Matrix acc = Matrix::Zero(x.rows(), x.cols());
    for (const Matrix& s : slots) {
        acc += s;
    }
    return acc;
}

double max_over_tasks_serial(std::size_t count, const std::function<double(std::size_t)>& fn) {
    double best = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        best = std::max(best, fn(i));
    }
    return best;
}

double max_over_tasks(std::size_t count, const std::function<double(std::size_t)>& fn) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(count);
    double best = 0.0;
    // max is exact, so the reduction order cannot change the result.
#pragma omp parallel for schedule(static) reduction(max : best) if (n > 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        best = std::max(best, fn(static_cast<std::size_t>(i)));
    }
    return best;
}

}  // namespace asym::kernels
