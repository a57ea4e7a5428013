#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace ness {

using cplx = std::complex<double>;
using MatrixC = Eigen::MatrixXcd;
using MatrixR = Eigen::MatrixXd;
using VectorC = Eigen::VectorXcd;
using VectorR = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

/// Largest singular value.
double spectral_norm(const MatrixC& a);
double spectral_norm(const MatrixR& a);

/// Largest |a_ij - (a^dagger)_ij|.
double hermiticity_defect(const MatrixC& a);
/// Largest |a_ij + a_ji|.
double antisymmetry_defect(const MatrixC& a);

/// Projects onto Hermitian, transpose-antisymmetric (hence purely imaginary)
/// matrices: a <- (a - a^T)/2, then Hermitian part.
MatrixC project_imag_antisymmetric(const MatrixC& a);

/// Eigendecomposition of a Hermitian matrix, ascending eigenvalues.
struct HermitianEigen {
    VectorR values;
    MatrixC vectors;
};
HermitianEigen hermitian_eigen(const MatrixC& a);

/// f(A) for Hermitian A via its eigendecomposition.
template <class F>
MatrixC hermitian_function(const HermitianEigen& eig, F&& f) {
    VectorC fv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) fv(i) = f(eig.values(i));
    return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// Eigenvalues of a general real matrix.
VectorC eigenvalues(const MatrixR& a);

/// Sorts by real part, then imaginary part.
void sort_by_real_part(std::vector<cplx>& values);

}  // namespace ness
