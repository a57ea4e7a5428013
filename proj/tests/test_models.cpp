#include "ness/bures.hpp"
#include "ness/errors.hpp"
#include "ness/models.hpp"
#include "ness/sylvester.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace ness;
using namespace ness::testing;

namespace {

const XYBoundaryConfig reference_chain{2, 0.5, 0.5, 0.3, 0.5, 0.1, 0.5};

RingConfig ring(int n, double h, double gamma, double epsilon = 1e-3) {
    // mu^2 = 0.2, nu^2 = 0.8 gives Lambda = 0.6.
    return {n, h, gamma, std::sqrt(0.2), std::sqrt(0.8), epsilon};
}

MetricTensor pipeline_metric(const ParametrizedModel& pm) {
    const StructureMatrices s = build_structure(pm.model);
    const SylvesterSolver solver(s.x);
    const SylvesterSolution sol = solve_steady(s, solver);
    return metric_tensor(sol.c, solve_derivatives(solver, pm.axes(), pm.structure_derivatives(), sol.c));
}

}  // namespace

TEST_CASE("boundary XY builder shapes and validation") {
    XYBoundaryConfig cfg = reference_chain;
    cfg.n = 5;
    const ParametrizedModel pm = build_xy_boundary(cfg);
    CHECK(pm.model.hamiltonian.rows() == 10);
    CHECK(pm.model.lindblad.rows() == 4);
    CHECK(pm.axes() == std::vector<std::string>{"h", "gamma"});
    cfg.n = 1;
    CHECK_THROWS_AS(build_xy_boundary(cfg), Error);
    cfg.n = 4;
    cfg.gl_plus = -0.1;
    CHECK_THROWS_AS(build_xy_boundary(cfg), Error);
}

TEST_CASE("undriven chain has M = 0 and no gap") {
    const ParametrizedModel pm = build_xy_boundary({6, 0.5, 0.5, 0, 0, 0, 0});
    const StructureMatrices s = build_structure(pm.model);
    CHECK(s.m.isZero());
    CHECK(gap(s).delta == 0.0);
}

TEST_CASE("weak-drive bulk spectrum approaches +-2i omega_k") {
    const int n = 200;
    // Above h_c, so there are no near-zero edge modes.
    const double h = 1.5, gamma = 0.5, rate = 1e-6;
    const ParametrizedModel pm = build_xy_boundary({n, h, gamma, rate, rate, rate, rate});
    const VectorC x = eigenvalues(build_structure(pm.model).x);
    // Open-chain momenta k = pi m / (n + 1); every |x| sits near some 2 omega_k.
    std::vector<double> omegas;
    for (int m = 1; m <= n; ++m) {
        const double k = std::numbers::pi * m / (n + 1);
        omegas.push_back(2.0 * std::sqrt(std::pow(std::cos(k) - h, 2) + gamma * gamma * std::pow(std::sin(k), 2)));
    }
    double worst = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        CHECK(std::abs(x(i).real()) < 1e-4);
        double best = 1e9;
        for (double w : omegas) best = std::min(best, std::abs(std::abs(x(i).imag()) - w));
        worst = std::max(worst, best);
    }
    CHECK(worst < 5.0 / n);
    const double top = x.cwiseAbs().maxCoeff();
    CHECK(top == doctest::Approx(2.0 * (1.0 + h)).epsilon(1e-3));
}

TEST_CASE("ring structure matrices commute with the cyclic shift") {
    const int n = 7;
    const ParametrizedModel pm = build_ring_numeric(ring(n, 0.7, 0.4, 0.1));
    const StructureMatrices s = build_structure(pm.model);
    MatrixR shift = MatrixR::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        shift((j + 1) % n, j) = 1.0;
        shift(n + (j + 1) % n, n + j) = 1.0;
    }
    // Fermion periodic boundary terms commute with the plain shift.
    CHECK((shift * s.x - s.x * shift).cwiseAbs().maxCoeff() < 1e-10);
    const MatrixC sc = shift.cast<cplx>();
    CHECK(max_abs(sc * s.y - s.y * sc) < 1e-10);
}

TEST_CASE("ring with balanced gain and loss has C = 0") {
    RingConfig cfg = ring(6, 0.5, 0.5);
    cfg.mu = cfg.nu = 0.7;
    CHECK(cfg.lambda() == 0.0);
    const SylvesterSolution sol = solve_steady(build_structure(build_ring_numeric(cfg).model));
    CHECK(max_abs(sol.c.matrix()) < 1e-10);
    CHECK(max_abs(ring_fourier_blocks(cfg)) == 0.0);
    CHECK(ring_metric_analytic(cfg).g.isZero());
}

TEST_CASE("ring gap is set by the dissipation strength") {
    for (int n : {6, 10}) {
        RingConfig cfg;
        cfg.n = n;
        cfg.h = 0.7;
        cfg.gamma = 0.4;
        cfg.mu = 1.0;
        cfg.nu = 2.0;
        cfg.epsilon = 0.1;
        const double numeric = gap(build_structure(build_ring_numeric(cfg).model)).delta;
        CHECK(ring_gap(cfg) == doctest::Approx(numeric).epsilon(1e-10));
    }
}

TEST_CASE("pure loss gives Lambda = -1") {
    RingConfig cfg = ring(4, 0.5, 0.5);
    cfg.mu = 1.0;
    cfg.nu = 0.0;
    CHECK(cfg.lambda() == -1.0);
    CHECK_THROWS_AS(ring_metric_analytic(cfg), Error);
}

TEST_CASE("ring momentum blocks") {
    const RingConfig cfg = ring(8, 0.5, 0.5);
    const auto modes = ring_modes(8, 0.5, 0.5);
    CHECK(modes[0].q == 0.0);
    CHECK(modes[4].q == 0.0);
    const MatrixC blocks = ring_fourier_blocks(cfg);
    for (int k = 0; k < 8; ++k) {
        const MatrixC b = blocks.block(2 * k, 2 * k, 2, 2);
        const VectorR ev = hermitian_eigen(b).values;
        CHECK(ev(1) == doctest::Approx(0.6 * std::abs(std::cos(0.5 * modes[k].q))).epsilon(1e-12));
        CHECK(ev(0) == doctest::Approx(-ev(1)).epsilon(1e-12));
    }
    const MatrixC u = ring_fourier_transform(8);
    CHECK(max_abs(u * u.adjoint() - MatrixC::Identity(16, 16)) < 1e-12);
    CHECK_THROWS_AS(ring_fourier_transform(7), Error);
}

TEST_CASE("analytic ring correlations match the numeric ring at weak coupling") {
    for (double h : {0.5, 1.3}) {
        const RingConfig cfg = ring(8, h, 0.5);
        const SylvesterSolution sol = solve_steady(build_structure(build_ring_numeric(cfg).model));
        CHECK(max_abs(sol.c.matrix() - ring_analytic_correlations(cfg).matrix()) < 1e-2);
    }
}

TEST_CASE("analytic ring metric matches the generic pipeline") {
    for (double h : {0.5, 1.3}) {
        const RingConfig cfg = ring(8, h, 0.5);
        const MetricTensor num = pipeline_metric(build_ring_numeric(cfg));
        const MetricTensor ana = ring_metric_analytic(cfg);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(num.g(i, j) == doctest::Approx(ana.g(i, j)).epsilon(0.05).scale(ana.g.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("ring gapless momentum") {
    // gamma = 0 and h = cos(phi_1) with sin(phi_1) != 0.
    const double h = std::cos(2.0 * std::numbers::pi / 6.0);
    try {
        ring_modes(6, h, 0.0);
        FAIL("expected singular_momentum");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_momentum);
    }
    // h = 1 touches phi = 0 only, where q and dq vanish identically.
    CHECK_NOTHROW(ring_modes(64, 1.0, 0.5));
}

TEST_CASE("phase diagnostics") {
    PhaseDiagnostics d = phase_diagnostics(1.5, 0.5);
    CHECK(d.label == PhaseLabel::srmc);
    CHECK(d.h_c == doctest::Approx(0.75));
    CHECK(d.has_xi);
    CHECK(d.xi == doctest::Approx(std::sqrt(2 * 0.75 / 0.75) / 8));
    CHECK(phase_diagnostics(0.3, 0.6).label == PhaseLabel::lrmc);
    CHECK(phase_diagnostics(0.75, 0.5).label == PhaseLabel::critical_line);
    CHECK(phase_diagnostics(0.0, 0.6).label == PhaseLabel::srmc);
    CHECK(phase_diagnostics(0.3, 0.0).label == PhaseLabel::srmc);
    CHECK(phase_diagnostics(0.3, 1.0).h_c == 0.0);
    CHECK_FALSE(phase_diagnostics(0.3, 0.6).has_xi);
    CHECK(std::string(to_string(PhaseLabel::critical_line)) == "critical-line");
}

TEST_CASE("magnetic correlations: decay in SRMC, plateaus in LRMC") {
    const int n = 60;
    const auto connected = [&](double h, double gamma) {
        const SylvesterSolution sol =
            solve_steady(build_structure(build_xy_boundary({n, h, gamma, 0.3, 0.5, 0.1, 0.5}).model));
        std::vector<double> row;
        const int i = n / 4;
        for (int j = i + 1; j <= n; ++j)
            row.push_back(std::abs(zz_correlator(sol.c, i, j) - sz_expectation(sol.c, i) * sz_expectation(sol.c, j)));
        return row;
    };
    // Exponential fit over |i - j| in [5, n/2], close enough to h_c that the
    // decay stays above roundoff.
    const auto srmc = connected(0.65, 0.6);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int d = 5; d <= n / 2; ++d) {
        const double y = std::log(srmc[d - 1]);
        sx += d;
        sy += y;
        sxx += d * d;
        sxy += d * y;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / count;
    const double xi = phase_diagnostics(0.65, 0.6).xi;
    CHECK(-slope > 0.5 / xi);
    CHECK(-slope < 2.0 / xi);

    const auto lrmc = connected(0.3, 0.6);
    double far_min = 1e300;
    for (std::size_t d = lrmc.size() / 2; d < lrmc.size(); ++d) far_min = std::min(far_min, lrmc[d]);
    const double extrapolated = std::exp(intercept + slope * static_cast<double>(lrmc.size()));
    CHECK(far_min > 10.0 * extrapolated);
}
