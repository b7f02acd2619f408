// Times the OpenMP kernels against their serial references and prints a
// speedup table. The parallel kernels are bit-identical to the serial ones by
// construction; this binary exists to show when the parallelism pays off.
//
//   ./bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "asym/kernels.hpp"
#include "asym/random.hpp"
#include "asym/symmetry.hpp"
#include "asym/universality.hpp"

using namespace asym;

namespace {

double best_seconds(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        best = std::min(best, elapsed);
    }
    return best;
}

void report(const std::string& label, double serial, double parallel) {
    std::printf("%-38s %10.3f ms %10.3f ms %8.2fx\n", label.c_str(), serial * 1e3,
                parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
    std::printf("threads: %d, repeats per measurement: %d\n\n", omp_get_max_threads(), repeats);
    std::printf("%-38s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    rng::Prng gen(2718);

    // Operator-sum conjugation at growing size.
    for (const auto& [dim, n_ops] : std::vector<std::pair<Index, int>>{
             {16, 16}, {64, 64}, {96, 256}}) {
        std::vector<Matrix> ops;
        for (int i = 0; i < n_ops; ++i) {
            ops.push_back(rng::ginibre(gen, dim));
        }
        const Matrix x = rng::ginibre(gen, dim);
        volatile double sink = 0.0;
        const double serial = best_seconds(repeats, [&] {
            sink = kernels::conjugation_sum_serial(ops, x).norm();
        });
        const double parallel = best_seconds(repeats, [&] {
            sink = kernels::conjugation_sum(ops, x).norm();
        });
        (void)sink;
        report("conjugation_sum d=" + std::to_string(dim) + " ops=" + std::to_string(n_ops),
               serial, parallel);
    }

    // Covariance residual scan (group elements x matrix units).
    {
        std::vector<int> charges(16);
        for (std::size_t j = 0; j < charges.size(); ++j) {
            charges[j] = static_cast<int>(j) % 8;
        }
        const SymmetryRep rep = cyclic(8, 16, charges);
        const KrausChannel channel = group_average_channel(rep, rng::random_cptp(gen, 16, 2));
        const std::vector<Matrix>& us = rep.unitaries();
        const Index d = rep.dim();
        auto task = [&](std::size_t index) {
            const Matrix& u = us[index / static_cast<std::size_t>(d * d)];
            const std::size_t unit = index % static_cast<std::size_t>(d * d);
            Matrix e = Matrix::Zero(d, d);
            e(static_cast<Index>(unit) / d, static_cast<Index>(unit) % d) = 1.0;
            return frobenius(channel.apply_matrix(u * e * u.adjoint()) -
                             u * channel.apply_matrix(e) * u.adjoint());
        };
        const std::size_t count = us.size() * static_cast<std::size_t>(d * d);
        volatile double sink = 0.0;
        const double serial =
            best_seconds(repeats, [&] { sink = kernels::max_over_tasks_serial(count, task); });
        const double parallel =
            best_seconds(repeats, [&] { sink = kernels::max_over_tasks(count, task); });
        (void)sink;
        report("covariance_scan |G|=8 d=16", serial, parallel);
    }

    // Theorem harness trials (thread count toggled at runtime).
    {
        const SymmetryRep rep = cyclic(6, 6, {0, 1, 2, 3, 4, 5});
        const int saved = omp_get_max_threads();
        volatile int sink = 0;
        omp_set_num_threads(1);
        const double serial =
            best_seconds(repeats, [&] { sink = theorem_check(rep, 60, 6, 99).frozen_count; });
        omp_set_num_threads(saved);
        const double parallel =
            best_seconds(repeats, [&] { sink = theorem_check(rep, 60, 6, 99).frozen_count; });
        (void)sink;
        report("theorem_check trials=60", serial, parallel);
    }

    return 0;
}
