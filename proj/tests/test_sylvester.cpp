#include "ness/errors.hpp"
#include "ness/models.hpp"
#include "ness/oracle.hpp"
#include "ness/sylvester.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace ness;
using namespace ness::testing;

TEST_CASE("schur elimination solves general right-hand sides") {
    std::mt19937_64 rng(31);
    const MatrixR x = random_paired_x(4, rng);
    const SylvesterSolver solver(x);
    const MatrixC rhs = random_real(8, 8, rng).cast<cplx>() + I * random_real(8, 8, rng).cast<cplx>();
    const MatrixC c = solver.solve(rhs);
    CHECK(solver.residual(c, rhs) < 1e-10 * rhs.norm());
}

TEST_CASE("steady state agrees with the vectorized solve") {
    for (int seed = 0; seed < 5; ++seed) {
        const QuadraticLindbladian m = oracle::random_model(3, 3, 100 + seed);
        const StructureMatrices s = build_structure(m);
        const SylvesterSolution a = solve_steady(s);
        const SylvesterSolution b = solve_steady_vectorized(s);
        CHECK(a.method == SylvesterMethod::schur_elimination);
        CHECK(b.method == SylvesterMethod::kron_vectorized);
        CHECK(max_abs(a.c.matrix() - b.c.matrix()) < 1e-10);
        CHECK(a.residual < 1e-10);
    }
}

TEST_CASE("steady state matches the dense kernel for random models") {
    for (int seed = 0; seed < 4; ++seed) {
        const QuadraticLindbladian m = oracle::random_model(2 + seed % 2, 2, 200 + seed);
        const SylvesterSolution sol = solve_steady(build_structure(m));
        const oracle::DenseState rho = oracle::steady_state_dense(oracle::dense_liouvillean(m));
        CHECK(max_abs(oracle::correlations_from_state(rho) - sol.c.matrix()) < 1e-9);
    }
}

TEST_CASE("zero gap is reported as a non-unique steady state") {
    const ParametrizedModel pm = build_xy_boundary({4, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0});
    const StructureMatrices s = build_structure(pm.model);
    CHECK(s.y.cwiseAbs().maxCoeff() == 0.0);
    try {
        solve_steady(s);
        FAIL("expected non_unique_steady");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_unique_steady);
    }
    CHECK_THROWS_AS(solve_steady_vectorized(s), Error);
}

TEST_CASE("vectorized solve enforces its size cap") {
    const ParametrizedModel pm = build_xy_boundary({33, 0.5, 0.5, 0.3, 0.5, 0.1, 0.5});
    try {
        solve_steady_vectorized(build_structure(pm.model));
        FAIL("expected size_cap");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::size_cap);
    }
}

TEST_CASE("parameter derivatives match central differences of the steady state") {
    const XYBoundaryConfig base{8, 0.6, 0.4, 0.3, 0.5, 0.1, 0.5};
    const ParametrizedModel pm = build_xy_boundary(base);
    const StructureMatrices s = build_structure(pm.model);
    const SylvesterSolver solver(s.x);
    const SylvesterSolution sol = solve_steady(s, solver);
    const DerivativeSet d = solve_derivatives(solver, pm.axes(), pm.structure_derivatives(), sol.c);
    REQUIRE(d.size() == 2);
    CHECK(d.axes[0] == "h");
    const double step = 1e-5;
    for (int axis = 0; axis < 2; ++axis) {
        XYBoundaryConfig up = base, down = base;
        (axis == 0 ? up.h : up.gamma) += step;
        (axis == 0 ? down.h : down.gamma) -= step;
        const MatrixC cu = solve_steady(build_structure(build_xy_boundary(up).model)).c.matrix();
        const MatrixC cd = solve_steady(build_structure(build_xy_boundary(down).model)).c.matrix();
        const MatrixC fd = (cu - cd) / (2 * step);
        CHECK(max_abs(fd - d.dc[axis]) < 1e-7 * std::max(1.0, max_abs(fd)));
        CHECK(d.residuals[axis] < 1e-10);
    }
}

TEST_CASE("derivative count mismatch is rejected") {
    const ParametrizedModel pm = build_xy_boundary({4, 0.5, 0.5, 0.3, 0.5, 0.1, 0.5});
    const StructureMatrices s = build_structure(pm.model);
    const SylvesterSolution sol = solve_steady(s);
    CHECK_THROWS_AS(solve_derivatives(s, {"h"}, pm.structure_derivatives(), sol.c), Error);
}

TEST_CASE("kronecker sum acts on row-major vectorization") {
    std::mt19937_64 rng(32);
    const MatrixR x = random_real(3, 3, rng);
    const MatrixR c = random_real(3, 3, rng);
    const MatrixR lhs = x * c + c * x.transpose();
    VectorR vc(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) vc(i * 3 + j) = c(i, j);
    const VectorR out = kron_sum(x) * vc;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(out(i * 3 + j) == doctest::Approx(lhs(i, j)));
}
