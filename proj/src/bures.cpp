#include "ness/bures.hpp"
#include "ness/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ness {

double MetricTensor::largest_eigenvalue() const {
    if (g.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<MatrixR> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

int MetricTensor::index_of(const std::string& axis) const {
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (axes[i] == axis) return static_cast<int>(i);
    throw Error(ErrorKind::domain, "MetricTensor: unknown axis '" + axis + "'");
}

double MetricTensor::at(const std::string& a, const std::string& b) const {
    return g(index_of(a), index_of(b));
}

namespace {

void require_same_shape(const CorrelationMatrix& c, const MatrixC& dc, const char* where) {
    if (dc.rows() != c.dim() || dc.cols() != c.dim()) {
        std::ostringstream os;
        os << where << ": dC is " << dc.rows() << "x" << dc.cols() << ", C is " << c.dim() << "x" << c.dim();
        throw Error(ErrorKind::structural_input, os.str());
    }
}

// Weights 1/(1 - c_r c_s) with the pseudo-inverse cut applied.
MatrixR inverse_weights(const CorrelationMatrix& c) {
    const VectorR& v = c.eigenvalues();
    const Eigen::Index d = v.size();
    MatrixR w(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index s = 0; s < d; ++s) {
            const double denom = 1.0 - v(r) * v(s);
            w(r, s) = std::abs(denom) < metric_pseudo_inverse_cut ? 0.0 : 1.0 / denom;
        }
    return w;
}

}  // namespace

double line_element(const CorrelationMatrix& c, const MatrixC& dc) {
    require_same_shape(c, dc, "line_element");
    const MatrixC rot = c.eigenvectors().adjoint() * dc * c.eigenvectors();
    return (rot.cwiseAbs2().cwiseProduct(inverse_weights(c))).sum();
}

MetricTensor metric_tensor(const CorrelationMatrix& c, const DerivativeSet& dcs) {
    if (dcs.axes.size() != dcs.dc.size())
        throw Error(ErrorKind::structural_input, "metric_tensor: axis/derivative count mismatch");
    const MatrixR w = inverse_weights(c);
    const std::size_t p = dcs.size();
    std::vector<MatrixC> rot;
    rot.reserve(p);
    for (const auto& d : dcs.dc) {
        require_same_shape(c, d, "metric_tensor");
        rot.push_back(c.eigenvectors().adjoint() * d * c.eigenvectors());
    }
    MetricTensor out{dcs.axes, MatrixR::Zero(p, p)};
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            // (d_a C)_rs (d_b C)_sr with both factors Hermitian.
            const cplx val = (rot[a].cwiseProduct(rot[b].conjugate()).cwiseProduct(w.cast<cplx>())).sum();
            if (std::abs(val.imag()) > 1e-9 * std::max(1.0, std::abs(val.real()))) {
                std::ostringstream os;
                os << "metric_tensor: imaginary residue " << val.imag() << " on (" << dcs.axes[a] << ", "
                   << dcs.axes[b] << ")";
                throw Error(ErrorKind::convergence, os.str());
            }
            out.g(a, b) = out.g(b, a) = val.real();
        }
    return out;
}

double gaussian_fidelity(const CorrelationMatrix& c1, const CorrelationMatrix& c2) {
    if (c1.dim() != c2.dim()) throw Error(ErrorKind::structural_input, "gaussian_fidelity: dimension mismatch");
    const TMatrix t1 = t_from_correlation(c1);
    const TMatrix t2 = t_from_correlation(c2);
    const MatrixC sqrt_t1 = hermitian_function(t1.eigen(), [](double x) { return std::sqrt(std::max(x, 0.0)); });
    MatrixC inner = sqrt_t1 * t2.matrix() * sqrt_t1;
    inner = 0.5 * (inner + inner.adjoint());
    const HermitianEigen ie = hermitian_eigen(inner);
    double log_f = 0.0;
    for (Eigen::Index r = 0; r < ie.values.size(); ++r) {
        double m = ie.values(r);
        if (m < 0.0) {
            if (m < -1e-12 * std::max(1.0, ie.values.cwiseAbs().maxCoeff()))
                throw Error(ErrorKind::convergence, "gaussian_fidelity: sqrt(T) T' sqrt(T) not positive");
            m = 0.0;
        }
        log_f += 0.5 * std::log1p(std::sqrt(m));
        log_f -= 0.25 * std::log1p(t1.eigenvalues()(r));
        log_f -= 0.25 * std::log1p(t2.eigenvalues()(r));
    }
    return std::min(1.0, std::exp(log_f));
}

BoundReport bound_report(const StructureMatrices& s, const StructureDerivative& ds,
                         const CorrelationMatrix& c, const MatrixC& dc) {
    BoundReport r;
    const double n = c.modes();
    const double cn = c.spectral_norm();
    r.ds2 = line_element(c, dc);
    r.ds2_per_n = r.ds2 / n;
    r.p_c = cn < 1.0 ? 1.0 / (1.0 - cn * cn) : std::numeric_limits<double>::infinity();
    const double dcn = spectral_norm(dc);
    r.cs_bound = 2.0 * n * r.p_c * dcn * dcn;
    r.cs_satisfied = r.ds2 <= r.cs_bound + bound_slack;
    r.delta = gap(s).delta;
    r.gap_bound_defined = r.delta > 0.0;
    if (r.gap_bound_defined) {
        const double drive = spectral_norm(ds.dy) + 2.0 * spectral_norm(ds.dx);
        r.gap_bound = 2.0 * r.p_c / (r.delta * r.delta) * drive * drive;
        r.gap_satisfied = r.ds2_per_n <= r.gap_bound + bound_slack;
    } else {
        r.gap_bound = std::numeric_limits<double>::infinity();
    }
    return r;
}

}  // namespace ness
