#pragma once

#include "ness/linalg.hpp"

namespace ness {

/// Majorana two-point function C_ij = <[w_i, w_j]>/2 of a Gaussian fermionic
/// state on n modes. Majorana ordering: index l is w_l = f_l + f_l^dagger,
/// index n + l is w_{n+l} = i (f_l - f_l^dagger), l = 0..n-1.
///
/// Invariants: Hermitian, transpose-antisymmetric (hence imaginary with a
/// zero diagonal), spectral norm at most 1. Deviations below the
/// construction tolerance are projected away, larger ones throw
/// ErrorKind::structural_input.
class CorrelationMatrix {
public:
    static constexpr double default_tolerance = 1e-10;

    explicit CorrelationMatrix(const MatrixC& data, double tolerance = default_tolerance);

    /// The zero matrix on n modes (infinite-temperature state).
    static CorrelationMatrix zero(int modes);

    int modes() const { return static_cast<int>(data_.rows() / 2); }
    int dim() const { return static_cast<int>(data_.rows()); }
    const MatrixC& matrix() const { return data_; }

    /// Ascending eigenvalues, clipped into [-1, 1].
    const VectorR& eigenvalues() const { return eigen_.values; }
    const MatrixC& eigenvectors() const { return eigen_.vectors; }
    const HermitianEigen& eigen() const { return eigen_; }

    /// max |c_r|.
    double spectral_norm() const;

private:
    MatrixC data_;
    HermitianEigen eigen_;
};

/// Exponent of rho = exp(-(i/4) sum G_ij w_i w_j) / Z. G is real
/// antisymmetric; iG is Hermitian with eigenvalue pairs +-g_k.
class GMatrix {
public:
    explicit GMatrix(const MatrixR& data);
    int modes() const { return static_cast<int>(data_.rows() / 2); }
    const MatrixR& matrix() const { return data_; }
    /// iG as a Hermitian complex matrix.
    MatrixC hermitian_form() const { return I * data_.cast<cplx>(); }

private:
    MatrixR data_;
};

/// T = exp(iG) = (1 + C)(1 - C)^{-1}: Hermitian, positive, T^T = T^{-1}.
class TMatrix {
public:
    TMatrix(const MatrixC& data, const HermitianEigen& eigen) : data_(data), eigen_(eigen) {}
    const MatrixC& matrix() const { return data_; }
    const VectorR& eigenvalues() const { return eigen_.values; }
    const HermitianEigen& eigen() const { return eigen_; }

private:
    MatrixC data_;
    HermitianEigen eigen_;
};

/// C = tanh(iG/2).
CorrelationMatrix correlation_from_G(const GMatrix& g);

/// Inverse of correlation_from_G. Throws pure_direction when any
/// |c_k| >= 1 - 1e-8 (the exponent diverges there).
GMatrix G_from_correlation(const CorrelationMatrix& c);

/// T = (1 + C)(1 - C)^{-1}; throws pure_direction when 1 - C is singular.
TMatrix t_from_correlation(const CorrelationMatrix& c);

/// Tr rho^2 = sqrt(det((1 + C^2)/2)).
double purity(const CorrelationMatrix& c);

/// <sigma^z_i> for a spin chain mapped by Jordan-Wigner; sites are 1-based.
double sz_expectation(const CorrelationMatrix& c, int site);

/// <sigma^z_i sigma^z_j> via the four-point Wick contraction; sites are
/// 1-based and i == j returns 1.
double zz_correlator(const CorrelationMatrix& c, int i, int j);

/// Sign linking the spin and Majorana pictures: sigma^z_l = -i w_l w_{n+l}.
/// Fixed against the dense spin-chain oracle.
inline constexpr cplx sigma_z_majorana_factor{0.0, -1.0};

}  // namespace ness
