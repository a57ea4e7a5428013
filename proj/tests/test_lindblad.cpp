#include "ness/errors.hpp"
#include "ness/lindblad.hpp"
#include "ness/models.hpp"
#include "ness/sylvester.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace ness;
using namespace ness::testing;

namespace {

StructureMatrices from_x(const MatrixR& x) {
    StructureMatrices s;
    s.x = x;
    s.y = MatrixC::Zero(x.rows(), x.cols());
    s.m = MatrixC::Zero(x.rows(), x.cols());
    return s;
}

bool contains(const std::vector<cplx>& v, cplx z) {
    return std::any_of(v.begin(), v.end(), [z](cplx w) { return std::abs(w - z) < 1e-12; });
}

}  // namespace

TEST_CASE("structure matrices have the required symmetries") {
    const ParametrizedModel pm = build_xy_boundary({5, 0.4, 0.7, 0.3, 0.5, 0.1, 0.5});
    const StructureMatrices s = build_structure(pm.model);
    CHECK(hermiticity_defect(s.m) < 1e-14);
    CHECK(max_abs(s.y + s.y.transpose()) < 1e-14);
    CHECK(s.y.real().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pure loss on one mode") {
    // L = sqrt(g) f with f = (w0 - i w1)/2.
    QuadraticLindbladian m;
    m.modes = 1;
    m.hamiltonian = MatrixC::Zero(2, 2);
    m.lindblad.resize(1, 2);
    m.lindblad << 0.5, -0.5 * I;
    const StructureMatrices s = build_structure(m);
    CHECK(s.x.isApprox(MatrixR::Identity(2, 2)));
    const GapReport g = gap(s);
    CHECK(g.delta == doctest::Approx(2.0));
}

TEST_CASE("model validation") {
    QuadraticLindbladian m;
    m.modes = 1;
    m.hamiltonian = MatrixC::Identity(2, 2);
    m.lindblad.resize(0, 2);
    CHECK_THROWS_AS(m.validate(), Error);
    m.hamiltonian = MatrixC::Zero(3, 3);
    CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("liouvillean spectrum enumerates occupation patterns") {
    const std::vector<cplx> x{{1.0, 1.0}, {1.0, -1.0}};
    const auto spec = liouvillean_spectrum(x, 2);
    REQUIRE(spec.size() == 4);
    CHECK(spec.front() == cplx(0.0, 0.0));
    CHECK(contains(spec, {-1.0, -1.0}));
    CHECK(contains(spec, {-1.0, 1.0}));
    CHECK(contains(spec, {-2.0, 0.0}));
    CHECK(even_sector_gap(x, 2) == doctest::Approx(2.0));
}

TEST_CASE("pattern budget is enforced") {
    const std::vector<cplx> x(400, cplx(1.0, 0.0));
    CHECK_THROWS_AS(liouvillean_spectrum(x, 4), Error);
}

TEST_CASE("gap report flags marginal and unstable spectra") {
    MatrixR x = MatrixR::Zero(2, 2);
    x << 0.0, -1.0, 1.0, 0.0;  // +-i, no damping
    CHECK(gap(from_x(x)).delta == 0.0);
    x << -0.5, 0.0, 0.0, 1.0;
    const GapReport g = gap(from_x(x));
    CHECK_FALSE(g.stable);
    CHECK(g.delta == 0.0);
    CHECK_THROWS_AS(gap_identity_check(g), Error);
}

TEST_CASE("gap_identity holds on conjugate-paired spectra") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const GapIdentityReport r = gap_identity_check(from_x(random_paired_x(3, rng)));
        CHECK(r.max_discrepancy < 1e-8 * std::max(1.0, r.delta));
        CHECK(r.diagonalizable_hint);
    }
}

TEST_CASE("gap_identity reports a real simple slowest eigenvalue") {
    // Dephasing-like operator L = w0 + 0.3 w1 on one mode gives a real X
    // spectrum whose smallest element is simple; pairs in the even sector
    // then sit strictly above 2 min Re x.
    QuadraticLindbladian m;
    m.modes = 2;
    m.hamiltonian = MatrixC::Zero(4, 4);
    m.lindblad = MatrixC::Zero(2, 4);
    m.lindblad(0, 0) = 1.0;
    m.lindblad(0, 1) = 0.3;
    m.lindblad(1, 2) = 0.7;
    m.lindblad(1, 3) = 0.2 * I;
    const GapIdentityReport r = gap_identity_check(build_structure(m));
    CHECK(r.max_discrepancy > 1e-3);
}

TEST_CASE("kronecker-sum inverse norm against the Xhat gap") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 5; ++trial) {
        const MatrixR x = random_paired_x(2, rng);
        const GapIdentityReport r = gap_identity_check(from_x(x));
        const MatrixR inv = kron_sum(x).inverse();
        const VectorC ev = eigenvalues(inv);
        const double radius = ev.cwiseAbs().maxCoeff();
        CHECK(radius == doctest::Approx(1.0 / r.delta_xhat).epsilon(1e-8));
        CHECK(spectral_norm(inv) >= radius * (1.0 - 1e-10));
    }
    // Normal X: the operator norm equals the spectral radius.
    const MatrixR q = random_orthogonal(4, rng);
    MatrixR blocks = MatrixR::Zero(4, 4);
    blocks << 0.3, -1.0, 0, 0, 1.0, 0.3, 0, 0, 0, 0, 0.8, -2.0, 0, 0, 2.0, 0.8;
    const MatrixR x = q * blocks * q.transpose();
    const GapIdentityReport r = gap_identity_check(from_x(x));
    CHECK(spectral_norm(MatrixR(kron_sum(x).inverse())) == doctest::Approx(1.0 / r.delta_xhat).epsilon(1e-9));
}

TEST_CASE("derivative structure matches finite differences") {
    const XYBoundaryConfig base{6, 0.4, 0.7, 0.3, 0.5, 0.1, 0.5};
    const ParametrizedModel pm = build_xy_boundary(base);
    const auto ds = pm.structure_derivatives();
    const double step = 1e-6;
    XYBoundaryConfig up = base, down = base;
    up.h += step;
    down.h -= step;
    const StructureMatrices su = build_structure(build_xy_boundary(up).model);
    const StructureMatrices sd = build_structure(build_xy_boundary(down).model);
    CHECK(((su.x - sd.x) / (2 * step) - ds[0].dx).cwiseAbs().maxCoeff() < 1e-8);
}
