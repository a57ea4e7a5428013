#include "ness/models.hpp"
#include "ness/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ness {

std::vector<std::string> ParametrizedModel::axes() const {
    std::vector<std::string> out;
    for (const auto& d : derivatives) out.push_back(d.axis);
    return out;
}

std::vector<StructureDerivative> ParametrizedModel::structure_derivatives() const {
    std::vector<StructureDerivative> out;
    for (const auto& d : derivatives)
        out.push_back(differentiate_structure(model, d.d_hamiltonian, d.d_lindblad));
    return out;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::domain, what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

// Quadratic forms sum_pq K_pq w_p w_q, collapsed to the antisymmetric
// coefficient matrix once all terms are in (constants are dropped).
class MajoranaForm {
public:
    explicit MajoranaForm(int modes) : n_(modes), k_(MatrixC::Zero(2 * modes, 2 * modes)) {}

    void add(cplx c, int p, int q) { k_(p, q) += c; }

    // f_i and f_i^dag as Majorana coefficient vectors.
    VectorC annihilator(int i) const { return ladder(i, -0.5 * I); }
    VectorC creator(int i) const { return ladder(i, 0.5 * I); }

    // c A B + h.c. for Majorana-linear A, B with Hermitian-conjugate vectors
    // a_dag, b_dag.
    void add_pair(cplx c, const VectorC& a, const VectorC& b, const VectorC& a_dag, const VectorC& b_dag) {
        add_outer(c, a, b);
        add_outer(std::conj(c), b_dag, a_dag);
    }

    MatrixC hamiltonian() const { return 0.5 * (k_ - k_.transpose()); }

private:
    // Ladder vectors are sparse, so only nonzero entries are visited.
    void add_outer(cplx c, const VectorC& a, const VectorC& b) {
        for (Eigen::Index p = 0; p < a.size(); ++p) {
            if (a(p) == 0.0) continue;
            for (Eigen::Index q = 0; q < b.size(); ++q)
                if (b(q) != 0.0) k_(p, q) += c * a(p) * b(q);
        }
    }

    VectorC ladder(int i, cplx y) const {
        VectorC v = VectorC::Zero(2 * n_);
        v(i) = 0.5;
        v(n_ + i) = y;
        return v;
    }

    int n_;
    MatrixC k_;
};

MatrixC xy_hamiltonian(int n, double h, double gamma) {
    MajoranaForm form(n);
    // Jordan-Wigner: x_j x_{j+1} = i w_{n+j} w_{j+1}, y_j y_{j+1} = -i w_j w_{n+j+1},
    // z_j = -i w_j w_{n+j}.
    for (int j = 0; j + 1 < n; ++j) {
        form.add(I * (0.5 * (1.0 + gamma)), n + j, j + 1);
        form.add(-I * (0.5 * (1.0 - gamma)), j, n + j + 1);
    }
    for (int j = 0; j < n; ++j) form.add(-I * h, j, n + j);
    return form.hamiltonian();
}

MatrixC ring_hamiltonian(int n, double h, double gamma, double hopping) {
    MajoranaForm form(n);
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const VectorC ci = form.creator(i), ai = form.annihilator(i);
        const VectorC cj = form.creator(j), aj = form.annihilator(j);
        form.add_pair(hopping, ci, aj, ai, cj);
        form.add_pair(gamma, ci, cj, ai, aj);
        form.add_pair(h, ci, ai, ai, ci);
    }
    return form.hamiltonian();
}

}  // namespace

void XYBoundaryConfig::validate() const {
    require(n >= 2, "xy_boundary: n must be >= 2");
    require(std::isfinite(h) && std::isfinite(gamma), "xy_boundary: h and gamma must be finite");
    require(finite_nonneg(gl_plus) && finite_nonneg(gl_minus) && finite_nonneg(gr_plus) && finite_nonneg(gr_minus),
            "xy_boundary: rates must be finite and non-negative");
}

ParametrizedModel build_xy_boundary(const XYBoundaryConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    ParametrizedModel pm;
    pm.model.modes = n;
    pm.model.hamiltonian = xy_hamiltonian(n, cfg.h, cfg.gamma);

    MajoranaForm form(n);
    pm.model.lindblad.resize(4, 2 * n);
    pm.model.lindblad.row(0) = std::sqrt(cfg.gl_plus) * form.creator(0).transpose();
    pm.model.lindblad.row(1) = std::sqrt(cfg.gl_minus) * form.annihilator(0).transpose();
    // sigma^-_n carries the parity string, which acts as +1 on the even
    // sector holding the steady state.
    pm.model.lindblad.row(2) = std::sqrt(cfg.gr_plus) * form.creator(n - 1).transpose();
    pm.model.lindblad.row(3) = std::sqrt(cfg.gr_minus) * form.annihilator(n - 1).transpose();

    const MatrixC base = xy_hamiltonian(n, 0.0, 0.0);
    const MatrixC zero_l = MatrixC::Zero(4, 2 * n);
    pm.derivatives.push_back({"h", xy_hamiltonian(n, 1.0, 0.0) - base, zero_l});
    pm.derivatives.push_back({"gamma", xy_hamiltonian(n, 0.0, 1.0) - base, zero_l});
    return pm;
}

double RingConfig::lambda() const {
    const double denom = nu * nu + mu * mu;
    return denom > 0.0 ? (nu * nu - mu * mu) / denom : 0.0;
}

void RingConfig::validate() const {
    require(n >= 2, "ring: n must be >= 2");
    require(std::isfinite(h) && std::isfinite(gamma), "ring: h and gamma must be finite");
    require(std::isfinite(mu) && std::isfinite(nu), "ring: mu and nu must be finite");
    require(std::isfinite(epsilon) && epsilon > 0.0, "ring: epsilon must be positive");
}

ParametrizedModel build_ring_numeric(const RingConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    ParametrizedModel pm;
    pm.model.modes = n;
    pm.model.hamiltonian = ring_hamiltonian(n, cfg.h, cfg.gamma, 1.0);
    MajoranaForm form(n);
    pm.model.lindblad.resize(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        pm.model.lindblad.row(i) = (cfg.epsilon * cfg.mu) * form.annihilator(i).transpose();
        pm.model.lindblad.row(n + i) = (cfg.epsilon * cfg.nu) * form.creator(i).transpose();
    }
    const MatrixC zero_l = MatrixC::Zero(2 * n, 2 * n);
    pm.derivatives.push_back({"h", ring_hamiltonian(n, 1.0, 0.0, 0.0), zero_l});
    pm.derivatives.push_back({"gamma", ring_hamiltonian(n, 0.0, 1.0, 0.0), zero_l});
    return pm;
}

std::vector<RingMode> ring_modes(int n, double h, double gamma) {
    require(n >= 2, "ring: n must be >= 2");
    std::vector<RingMode> modes(n);
    for (int k = 0; k < n; ++k) {
        RingMode& m = modes[k];
        // Exact zeros of sin at k = 0 and k = n/2.
        const bool axis = k == 0 || 2 * k == n;
        m.phi = 2.0 * std::numbers::pi * k / n;
        const double s = axis ? 0.0 : std::sin(m.phi);
        const double c = k == 0 ? 1.0 : (2 * k == n ? -1.0 : std::cos(m.phi));
        const double d = h - c;
        m.omega = std::sqrt(d * d + gamma * gamma * s * s);
        if (s == 0.0) continue;  // q and its derivatives vanish identically
        if (m.omega == 0.0) {
            std::ostringstream os;
            os << "ring: gapless momentum k = " << k << " (phi = " << m.phi << ") at h = " << h
               << ", gamma = " << gamma;
            throw Error(ErrorKind::singular_momentum, os.str());
        }
        const double num = gamma * s;
        m.q = d != 0.0 ? -2.0 * std::atan(num / d) : (num > 0 ? -std::numbers::pi : std::numbers::pi);
        const double w2 = m.omega * m.omega;
        m.dq_dh = 2.0 * gamma * s / w2;
        m.dq_dgamma = -2.0 * d * s / w2;
    }
    return modes;
}

MatrixC ring_fourier_blocks(const RingConfig& cfg) {
    cfg.validate();
    const double lam = cfg.lambda();
    const auto modes = ring_modes(cfg.n, cfg.h, cfg.gamma);
    MatrixC c = MatrixC::Zero(2 * cfg.n, 2 * cfg.n);
    for (int k = 0; k < cfg.n; ++k) {
        const cplx e = std::exp(I * modes[k].q);
        c(2 * k, 2 * k + 1) = I * (0.5 * lam) * (1.0 + e);
        c(2 * k + 1, 2 * k) = I * (0.5 * lam) * (-1.0 - std::conj(e));
    }
    return c;
}

MatrixC ring_fourier_transform(int n) {
    require(n >= 2 && n % 2 == 0, "ring_fourier_transform: n must be even");
    MatrixC u = MatrixC::Zero(2 * n, 2 * n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            // Staggered so that block k carries q(phi_k) for this hopping sign.
            const double stagger = j % 2 == 0 ? norm : -norm;
            const cplx phase = std::polar(stagger, 2.0 * std::numbers::pi * k * j / n);
            u(2 * k, j) = phase;
            u(2 * k + 1, n + j) = phase;
        }
    return u;
}

CorrelationMatrix ring_analytic_correlations(const RingConfig& cfg) {
    const MatrixC u = ring_fourier_transform(cfg.n);
    return CorrelationMatrix(u.adjoint() * ring_fourier_blocks(cfg) * u, 1e-9);
}

double ring_gap(const RingConfig& cfg) {
    cfg.validate();
    return 2.0 * cfg.epsilon * cfg.epsilon * (cfg.mu * cfg.mu + cfg.nu * cfg.nu);
}

MetricTensor ring_metric_analytic(const RingConfig& cfg) {
    cfg.validate();
    const double lam = cfg.lambda();
    require(std::abs(lam) < 1.0, "ring_metric_analytic: |Lambda| must be < 1");
    const auto modes = ring_modes(cfg.n, cfg.h, cfg.gamma);
    const double l2 = lam * lam;
    double ghh = 0.0, ghg = 0.0, ggg = 0.0;
    for (const auto& m : modes) {
        const double c2 = std::pow(std::cos(0.5 * m.q), 2);
        const double w = (1.0 - l2 * c2 * std::cos(m.q)) / (1.0 - l2 * l2 * c2 * c2);
        ghh += w * m.dq_dh * m.dq_dh;
        ghg += w * m.dq_dh * m.dq_dgamma;
        ggg += w * m.dq_dgamma * m.dq_dgamma;
    }
    MetricTensor g{{"h", "gamma"}, MatrixR(2, 2)};
    g.g << ghh, ghg, ghg, ggg;
    g.g *= 0.5 * l2;
    return g;
}

const char* to_string(PhaseLabel p) {
    switch (p) {
        case PhaseLabel::srmc: return "SRMC";
        case PhaseLabel::lrmc: return "LRMC";
        case PhaseLabel::critical_line: return "critical-line";
    }
    return "?";
}

PhaseDiagnostics phase_diagnostics(double h, double gamma) {
    PhaseDiagnostics d;
    d.h_c = std::abs(1.0 - gamma * gamma);
    const double ah = std::abs(h);
    if (std::abs(ah - d.h_c) < 1e-6) {
        d.label = PhaseLabel::critical_line;
    } else if (h == 0.0 || gamma == 0.0 || ah > d.h_c) {
        d.label = PhaseLabel::srmc;
    } else {
        d.label = PhaseLabel::lrmc;
    }
    if (ah > d.h_c && d.h_c > 0.0) {
        d.xi = std::sqrt(2.0 * d.h_c / (ah - d.h_c)) / 8.0;
        d.has_xi = true;
    }
    return d;
}

}  // namespace ness
