#pragma once

#include "ness/bures.hpp"
#include "ness/gaussian.hpp"
#include "ness/lindblad.hpp"

#include <string>
#include <vector>

namespace ness {

/// Exact first derivative of a model along one named parameter axis.
struct AxisDerivative {
    std::string axis;
    MatrixC d_hamiltonian;
    MatrixC d_lindblad;
};

/// A quadratic Lindbladian together with its parameter derivatives.
struct ParametrizedModel {
    QuadraticLindbladian model;
    std::vector<AxisDerivative> derivatives;

    std::vector<std::string> axes() const;
    std::vector<StructureDerivative> structure_derivatives() const;
};

/// Open XY chain with field h and anisotropy gamma, driven at both ends by
/// sigma^+- with rates gl_plus, gl_minus (site 1) and gr_plus, gr_minus (site n).
struct XYBoundaryConfig {
    int n = 0;
    double h = 0.0;
    double gamma = 0.0;
    double gl_plus = 0.0;
    double gl_minus = 0.0;
    double gr_plus = 0.0;
    double gr_minus = 0.0;

    void validate() const;
};

/// Fermionic ring with hopping, pairing gamma and field h; every site has
/// loss epsilon*mu f_i and gain epsilon*nu f_i^dag.
struct RingConfig {
    int n = 0;
    double h = 0.0;
    double gamma = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double epsilon = 1e-3;

    /// (nu^2 - mu^2) / (nu^2 + mu^2)
    double lambda() const;
    void validate() const;
};

/// Builds the boundary XY chain with derivative axes {"h", "gamma"}.
ParametrizedModel build_xy_boundary(const XYBoundaryConfig& cfg);

/// Builds the dissipative ring with derivative axes {"h", "gamma"}.
ParametrizedModel build_ring_numeric(const RingConfig& cfg);

/// Momenta phi_k = 2 pi k / n and the Bogoliubov angles q_k of the ring.
/// Throws singular_momentum when omega_k = 0 with sin(phi_k) != 0.
struct RingMode {
    double phi = 0.0;
    double q = 0.0;
    double omega = 0.0;
    double dq_dh = 0.0;
    double dq_dgamma = 0.0;
};
std::vector<RingMode> ring_modes(int n, double h, double gamma);

/// Weak-coupling steady correlations of the ring as 2x2 momentum blocks,
/// ordered (x_0, y_0, x_1, y_1, ...), where x_k and y_k are the Fourier
/// transforms of the two Majorana sublattices. The result is Hermitian but
/// not transpose-antisymmetric, so it is returned as a plain matrix.
MatrixC ring_fourier_blocks(const RingConfig& cfg);

/// Unitary mapping real-space Majoranas to the momentum-block ordering of
/// ring_fourier_blocks: C_fourier = U C U^dag, with
/// U_{k,j} = (-1)^j exp(i phi_k j) / sqrt(n). Requires even n.
MatrixC ring_fourier_transform(int n);

/// The weak-coupling correlations mapped back to real space (even n).
CorrelationMatrix ring_analytic_correlations(const RingConfig& cfg);

/// Closed-form metric over axes (h, gamma). Requires |Lambda| < 1.
MetricTensor ring_metric_analytic(const RingConfig& cfg);
/// Liouvillean gap of the ring. The dissipator adds
/// epsilon^2 (mu^2 + nu^2) times the identity to an antisymmetric X, so the
/// gap is 2 epsilon^2 (mu^2 + nu^2) at every size.
double ring_gap(const RingConfig& cfg);

enum class PhaseLabel { srmc, lrmc, critical_line };
const char* to_string(PhaseLabel p);

struct PhaseDiagnostics {
    double h_c = 0.0;
    /// Localization length, only meaningful when has_xi.
    double xi = 0.0;
    bool has_xi = false;
    PhaseLabel label = PhaseLabel::srmc;
};

PhaseDiagnostics phase_diagnostics(double h, double gamma);

}  // namespace ness
