#pragma once

#include "ness/linalg.hpp"

#include <vector>

namespace ness {

/// Quadratic Lindbladian
///   d rho/dt = -i[H, rho] + sum_mu (2 L_mu rho L_mu^dag - {L_mu^dag L_mu, rho})
/// with H = sum_ij H_ij w_i w_j and L_mu = sum_i l_{mu i} w_i.
struct QuadraticLindbladian {
    int modes = 0;
    /// 2n x 2n, purely imaginary and antisymmetric.
    MatrixC hamiltonian;
    /// m x 2n complex coefficients, one row per Lindblad operator.
    MatrixC lindblad;

    /// Throws structural_input if shapes or the Hamiltonian form are wrong.
    void validate() const;
};

/// X = 4(iH + Re M), Y = -8i Im M, M_ij = sum_mu l_{mu i} conj(l_{mu j}).
struct StructureMatrices {
    MatrixR x;
    MatrixC y;
    MatrixC m;

    int modes() const { return static_cast<int>(x.rows() / 2); }
};

StructureMatrices build_structure(const QuadraticLindbladian& model);

/// Structure matrices of a derivative model (dH, dl) at a base point l.
/// Linear in the derivative: dX = 4(i dH + Re dM), dY = -8i Im dM with
/// dM = dl^T conj(l) + l^T conj(dl).
struct StructureDerivative {
    MatrixR dx;
    MatrixC dy;
};
StructureDerivative differentiate_structure(const QuadraticLindbladian& base,
                                            const MatrixC& d_hamiltonian,
                                            const MatrixC& d_lindblad);

struct GapReport {
    double delta = 0.0;
    std::vector<cplx> x_spectrum;  ///< sorted by real part
    bool stable = false;
    bool diagonalizable_hint = false;
    double eigenvector_condition = 0.0;
};

inline constexpr double diagonalizable_condition_limit = 1e8;
inline constexpr double marginal_real_part = 1e-12;

/// Liouvillean gap Delta = 2 min Re x_i from the eigenvalues of X. Spectra
/// with any |Re x| below marginal_real_part report delta = 0.
GapReport gap(const StructureMatrices& s);

/// -{sum_j x_j n_j} over occupation patterns n in {0,1}^{2n} with at most
/// max_excitations occupied modes. Always starts with 0. Throws size_cap
/// beyond 10^6 patterns.
std::vector<cplx> liouvillean_spectrum(const StructureMatrices& s, int max_excitations = 2);
std::vector<cplx> liouvillean_spectrum(const std::vector<cplx>& x, int max_excitations = 2);

/// Gap of the Liouvillean restricted to even operators (physical states):
/// min |sum_j x_j n_j| over nonzero patterns with an even number of
/// excitations, at most max_excitations.
double even_sector_gap(const std::vector<cplx>& x, int max_excitations = 2);

/// The three gap measures below coincide for diagonalizable X whose slowest
/// eigenvalues come in complex-conjugate pairs.
struct GapIdentityReport {
    double delta = 0.0;        ///< 2 min Re x
    double delta_l = 0.0;      ///< even-sector Liouvillean gap
    double delta_xhat = 0.0;   ///< min_{i,j} |x_i + x_j|
    double max_discrepancy = 0.0;
    bool diagonalizable_hint = false;
};

/// Throws ErrorKind::stability when X has eigenvalues with Re x < -1e-10.
GapIdentityReport gap_identity_check(const StructureMatrices& s);
GapIdentityReport gap_identity_check(const GapReport& g);

}  // namespace ness
