#include "ness/gaussian.hpp"
#include "ness/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ness {

namespace {

constexpr double pure_guard = 1e-8;
constexpr double clip_slack = 1e-10;

void require_square_even(const MatrixC& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty 2n x 2n matrix, got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::structural_input, os.str());
    }
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(const MatrixC& data, double tolerance) {
    require_square_even(data, "CorrelationMatrix");
    const double herm = hermiticity_defect(data);
    const double anti = antisymmetry_defect(data);
    if (herm > tolerance || anti > tolerance) {
        std::ostringstream os;
        os << "CorrelationMatrix: Hermiticity defect " << herm << ", antisymmetry defect " << anti
           << " exceed tolerance " << tolerance;
        throw Error(ErrorKind::structural_input, os.str());
    }
    data_ = project_imag_antisymmetric(data);
    eigen_ = hermitian_eigen(data_);
    for (Eigen::Index r = 0; r < eigen_.values.size(); ++r) {
        double& c = eigen_.values(r);
        if (std::abs(c) > 1.0 + std::max(tolerance, clip_slack)) {
            std::ostringstream os;
            os << "CorrelationMatrix: eigenvalue " << c << " outside [-1, 1]";
            throw Error(ErrorKind::structural_input, os.str());
        }
        c = std::clamp(c, -1.0, 1.0);
    }
}

CorrelationMatrix CorrelationMatrix::zero(int modes) {
    return CorrelationMatrix(MatrixC::Zero(2 * modes, 2 * modes));
}

double CorrelationMatrix::spectral_norm() const {
    return eigen_.values.cwiseAbs().maxCoeff();
}

GMatrix::GMatrix(const MatrixR& data) : data_(data) {
    if (data.rows() != data.cols() || data.rows() == 0 || data.rows() % 2 != 0)
        throw Error(ErrorKind::structural_input, "GMatrix: expected a non-empty 2n x 2n matrix");
    const double defect = (data + data.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-10 * std::max(1.0, data.cwiseAbs().maxCoeff())) {
        std::ostringstream os;
        os << "GMatrix: not antisymmetric (defect " << defect << ")";
        throw Error(ErrorKind::structural_input, os.str());
    }
    data_ = 0.5 * (data - data.transpose());
}

CorrelationMatrix correlation_from_G(const GMatrix& g) {
    const HermitianEigen eig = hermitian_eigen(g.hermitian_form());
    return CorrelationMatrix(hermitian_function(eig, [](double x) { return std::tanh(0.5 * x); }));
}

GMatrix G_from_correlation(const CorrelationMatrix& c) {
    const VectorR& vals = c.eigenvalues();
    for (Eigen::Index r = 0; r < vals.size(); ++r) {
        if (std::abs(vals(r)) >= 1.0 - pure_guard) {
            std::ostringstream os;
            os << "G_from_correlation: eigenvalue " << vals(r) << " too close to +-1, exponent diverges";
            throw Error(ErrorKind::pure_direction, os.str());
        }
    }
    const MatrixC ig = hermitian_function(c.eigen(), [](double x) { return 2.0 * std::atanh(x); });
    // G = -i (iG); iG is imaginary so G is real.
    return GMatrix(MatrixR(ig.imag()));
}

TMatrix t_from_correlation(const CorrelationMatrix& c) {
    HermitianEigen eig = c.eigen();
    for (Eigen::Index r = 0; r < eig.values.size(); ++r) {
        const double x = eig.values(r);
        if (1.0 - x < pure_guard) {
            std::ostringstream os;
            os << "t_from_correlation: 1 - C singular (eigenvalue " << x << ")";
            throw Error(ErrorKind::pure_direction, os.str());
        }
        eig.values(r) = (1.0 + x) / (1.0 - x);
    }
    MatrixC t = eig.vectors * eig.values.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    t = 0.5 * (t + t.adjoint());
    return TMatrix(t, eig);
}

double purity(const CorrelationMatrix& c) {
    double log_det = 0.0;
    for (Eigen::Index r = 0; r < c.eigenvalues().size(); ++r) {
        const double x = c.eigenvalues()(r);
        log_det += std::log(0.5 * (1.0 + x * x));
    }
    return std::exp(0.5 * log_det);
}

namespace {

void check_site(const CorrelationMatrix& c, int site) {
    if (site < 1 || site > c.modes()) {
        std::ostringstream os;
        os << "site " << site << " outside 1.." << c.modes();
        throw Error(ErrorKind::domain, os.str());
    }
}

}  // namespace

double sz_expectation(const CorrelationMatrix& c, int site) {
    check_site(c, site);
    const int n = c.modes();
    const int a = site - 1;
    return (sigma_z_majorana_factor * c.matrix()(a, n + a)).real();
}

double zz_correlator(const CorrelationMatrix& c, int i, int j) {
    check_site(c, i);
    check_site(c, j);
    if (i == j) return 1.0;
    const int n = c.modes();
    const MatrixC& m = c.matrix();
    const int a = i - 1, b = n + i - 1, p = j - 1, q = n + j - 1;
    // <w_a w_b w_p w_q> for four distinct Majoranas; <w_x w_y> = C_xy off the diagonal.
    const cplx wick = m(a, b) * m(p, q) - m(a, p) * m(b, q) + m(a, q) * m(b, p);
    return (sigma_z_majorana_factor * sigma_z_majorana_factor * wick).real();
}

}  // namespace ness
