#pragma once

// Data-parallel inner loops shared by the whole library. Each kernel comes in
// two flavours: an OpenMP version used in production and a plain serial
// reference the tests compare against. The parallel versions accumulate
// per-task results into slots and combine them in index order, so the output
// is bit-identical to the serial one for any thread count.

#include <cstddef>
#include <functional>
#include <span>

#include "asym/types.hpp"

namespace asym::kernels {

// sum_i ops[i] * x * ops[i]^dagger. The operator-sum core behind channel
// application, finite-group twirling and eigenspace pinching.
Matrix conjugation_sum(std::span<const Matrix> ops, const Matrix& x);
Matrix conjugation_sum_serial(std::span<const Matrix> ops, const Matrix& x);

// max over tasks 0..count-1 of fn(task). fn must be pure. Used for
// covariance/symmetry residual scans.
double max_over_tasks(std::size_t count, const std::function<double(std::size_t)>& fn);
double max_over_tasks_serial(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace asym::kernels
