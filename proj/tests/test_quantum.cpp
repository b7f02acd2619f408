#include <doctest.h>

#include <cmath>

#include "asym/quantum.hpp"
#include "asym/random.hpp"
#include "asym/scenarios.hpp"
#include "test_support.hpp"

using namespace asym;
using asym::test::basis_vector;

TEST_CASE("density_from_pure builds rank-1 projectors") {
    const DensityMatrix zero = density_from_pure(PureStateVector(basis_vector(2, 0)));
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK(frobenius(zero.matrix() - expected) <= 1e-15);

    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const DensityMatrix rho = density_from_pure(PureStateVector(plus));
    CHECK(frobenius(rho.matrix() - Matrix::Constant(2, 2, 0.5)) <= 1e-12);

    // Equal-amplitude two-qubit state: eigenvalue 1 along (|00> + |10>)/sqrt(2).
    const DensityMatrix eq = example1_state(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    Vector u = (basis_vector(4, 0) + basis_vector(4, 2)) / std::sqrt(2.0);
    CHECK(frobenius(eq.matrix() * u - u) <= 1e-12);
    CHECK(std::abs((eq.matrix() * eq.matrix() - eq.matrix()).norm()) <= 1e-12);
}

TEST_CASE("pure states must be normalized") {
    Vector big(2);
    big << 1.0, 1.0;
    CHECK_THROWS_AS(PureStateVector{big}, NotNormalizedError);
}

TEST_CASE("validate_density accepts states and names the violated bound") {
    CHECK_NOTHROW(validate_density(Matrix::Identity(2, 2) / 2.0));

    Matrix negative = Matrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(validate_density(negative), NotPsdError);

    Matrix heavy = Matrix::Zero(2, 2);
    heavy(0, 0) = 0.6;
    heavy(1, 1) = 0.6;
    CHECK_THROWS_AS(validate_density(heavy), TraceNotOneError);

    Matrix skew(2, 2);
    skew << 0.5, 0.1, -0.1, 0.5;
    CHECK_THROWS_AS(validate_density(skew), NotHermitianError);
}

TEST_CASE("apply_channel: identity, worked two-qubit case, Fock walk step") {
    rng::Prng gen(31);
    const KrausChannel identity = KrausChannel::cptp({Matrix::Identity(4, 4)});
    const DensityMatrix rho = rng::random_density(gen, 4);
    CHECK(frobenius(apply_channel(identity, rho).matrix() - rho.matrix()) <= 1e-14);

    // p = 1/2 on the equal-amplitude state: equal mixture of
    // u = (|00> + |10>)/sqrt(2) and v = (|01> - |11>)/sqrt(2).
    const DensityMatrix rho_0 = example1_state(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
    const DensityMatrix rho_t = apply_channel(example1_channel(0.5), rho_0);
    Vector u = (basis_vector(4, 0) + basis_vector(4, 2)) / std::sqrt(2.0);
    Vector v = (basis_vector(4, 1) - basis_vector(4, 3)) / std::sqrt(2.0);
    const Matrix expected = 0.5 * (u * u.adjoint()) + 0.5 * (v * v.adjoint());
    CHECK(frobenius(rho_t.matrix() - expected) <= 1e-12);

    // One measurement step away from the boundary: weights (1/2, 1/4, 1/4).
    const Index d = 8;
    const KrausChannel walk = example2_channel(d);
    const DensityMatrix level =
        density_from_pure(PureStateVector(basis_vector(d, 4)));
    const Matrix stepped = apply_channel(walk, level).matrix();
    Matrix walk_expected = Matrix::Zero(d, d);
    walk_expected(4, 4) = 0.5;
    walk_expected(5, 5) = 0.25;
    walk_expected(3, 3) = 0.25;
    CHECK(frobenius(stepped - walk_expected) <= 1e-12);

    CHECK_THROWS_AS(apply_channel(identity, rng::random_density(gen, 3)), DimMismatchError);
}

TEST_CASE("apply_channel preserves trace and positivity on random inputs") {
    rng::Prng gen(32);
    for (int rep = 0; rep < 10; ++rep) {
        const KrausChannel channel = rng::random_cptp(gen, 5, 3);
        const DensityMatrix rho = rng::random_density(gen, 5);
        const DensityMatrix out = apply_channel(channel, rho);
        CHECK(std::abs(out.trace_real() - 1.0) <= 1e-10);
        const HermitianEig eig = eig_hermitian(out.matrix());
        CHECK(eig.eigenvalues.minCoeff() >= -1e-10);
    }
}

TEST_CASE("compose acts as sequential application") {
    rng::Prng gen(33);
    const KrausChannel first = rng::random_cptp(gen, 4, 2);
    const KrausChannel second = rng::random_cptp(gen, 4, 2);
    const KrausChannel chained = compose(second, first);
    for (int rep = 0; rep < 10; ++rep) {
        const DensityMatrix rho = rng::random_density(gen, 4);
        const Matrix direct = apply_channel(second, apply_channel(first, rho)).matrix();
        CHECK(frobenius(apply_channel(chained, rho).matrix() - direct) <= 1e-12);
    }

    const KrausChannel identity = KrausChannel::cptp({Matrix::Identity(4, 4)});
    CHECK(action_residual(compose(identity, first), first) <= 1e-13);

    // Two measurement steps equal the iterated single step.
    const KrausChannel walk = example2_channel(9);
    const KrausChannel twice = compose(walk, walk);
    const DensityMatrix level = density_from_pure(PureStateVector(basis_vector(9, 4)));
    const Matrix iterated = apply_channel(walk, apply_channel(walk, level)).matrix();
    CHECK(frobenius(apply_channel(twice, level).matrix() - iterated) <= 1e-12);
}

TEST_CASE("adjoint_channel is an involution and detects unitality") {
    const KrausChannel identity = KrausChannel::cptp({Matrix::Identity(3, 3)});
    const KrausChannel adj = adjoint_channel(identity);
    REQUIRE(adj.ops().size() == 1);
    CHECK(frobenius(adj.ops()[0] - Matrix::Identity(3, 3)) == 0.0);

    rng::Prng gen(34);
    const KrausChannel channel = rng::random_cptp(gen, 4, 3);
    const KrausChannel twice = adjoint_channel(adjoint_channel(channel));
    REQUIRE(twice.ops().size() == channel.ops().size());
    for (std::size_t i = 0; i < channel.ops().size(); ++i) {
        CHECK(frobenius(twice.ops()[i] - channel.ops()[i]) == 0.0);  // exact involution
    }

    // The worked two-qubit channel is unital, so its adjoint fixes I.
    const KrausChannel adj_ex1 = adjoint_channel(example1_channel(0.7));
    CHECK(frobenius(adj_ex1.apply_matrix(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)) <=
          1e-12);
}

TEST_CASE("validate_cptp reports the completeness residual") {
    for (double p : {0.0, 0.3, 1.0}) {
        const CptpReport report = validate_cptp(example1_channel(p));
        CHECK(report.trace_preserving);
        CHECK(report.tp_residual <= 1e-14);
        CHECK(report.structurally_cp);
    }

    // Truncated walk channel: deficit exactly (1/4)|d-1><d-1|.
    const Index d = 7;
    const KrausChannel walk = example2_channel(d);
    const CptpReport walk_report = validate_cptp(walk);
    CHECK_FALSE(walk_report.trace_preserving);
    CHECK(walk_report.tp_residual == doctest::Approx(0.25).epsilon(1e-12));
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& k : walk.ops()) {
        sum += k.adjoint() * k;
    }
    Matrix deficit_expected = Matrix::Zero(d, d);
    deficit_expected(d - 1, d - 1) = 0.25;
    CHECK(frobenius(Matrix::Identity(d, d) - sum - deficit_expected) <= 1e-14);

    CHECK_THROWS_AS(KrausChannel::cptp({Matrix::Identity(2, 2) / 2.0}),
                    NotTracePreservingError);
    const KrausChannel half = KrausChannel::raw({Matrix::Identity(2, 2) / 2.0});
    CHECK_FALSE(validate_cptp(half).trace_preserving);
}

TEST_CASE("trace_decreasing channels enforce the declared deficit") {
    std::vector<Matrix> ops{std::sqrt(0.5) * Matrix::Identity(2, 2)};
    CHECK_THROWS_AS(KrausChannel::trace_decreasing(ops, 0.3), NotTracePreservingError);
    CHECK_NOTHROW(KrausChannel::trace_decreasing(ops, 0.5));

    // A trace-increasing list must be rejected outright.
    std::vector<Matrix> grow{std::sqrt(2.0) * Matrix::Identity(2, 2)};
    CHECK_THROWS_AS(KrausChannel::trace_decreasing(grow, 1.5), NotTracePreservingError);
}
