#include "ness/linalg.hpp"
#include "ness/errors.hpp"

#include <algorithm>

namespace ness {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::structural_input: return "structural_input";
        case ErrorKind::pure_direction: return "pure_direction";
        case ErrorKind::non_unique_steady: return "non_unique_steady_state";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::size_cap: return "size_cap";
        case ErrorKind::domain: return "domain";
        case ErrorKind::stability: return "stability";
        case ErrorKind::singular_momentum: return "singular_momentum";
        case ErrorKind::config: return "config";
    }
    return "unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return 2;
        case ErrorKind::non_unique_steady:
        case ErrorKind::stability: return 3;
        case ErrorKind::convergence: return 4;
        case ErrorKind::size_cap: return 5;
        case ErrorKind::structural_input:
        case ErrorKind::pure_direction:
        case ErrorKind::domain:
        case ErrorKind::singular_momentum: return 6;
    }
    return 1;
}

double spectral_norm(const MatrixC& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<MatrixC> svd(a);
    return svd.singularValues()(0);
}

double spectral_norm(const MatrixR& a) {
    if (a.size() == 0) return 0.0;
    Eigen::BDCSVD<MatrixR> svd(a);
    return svd.singularValues()(0);
}

double hermiticity_defect(const MatrixC& a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double antisymmetry_defect(const MatrixC& a) {
    if (a.size() == 0) return 0.0;
    return (a + a.transpose()).cwiseAbs().maxCoeff();
}

MatrixC project_imag_antisymmetric(const MatrixC& a) {
    MatrixC anti = 0.5 * (a - a.transpose());
    MatrixC herm = 0.5 * (anti + anti.adjoint());
    // Hermitian + antisymmetric means purely imaginary; drop the real residue.
    return MatrixC(I * herm.imag().cast<cplx>());
}

HermitianEigen hermitian_eigen(const MatrixC& a) {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(a);
    return {es.eigenvalues(), es.eigenvectors()};
}

VectorC eigenvalues(const MatrixR& a) {
    if (a.size() == 0) return VectorC();
    Eigen::EigenSolver<MatrixR> es(a, false);
    return es.eigenvalues();
}

void sort_by_real_part(std::vector<cplx>& values) {
    std::sort(values.begin(), values.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

}  // namespace ness
