#pragma once

#include "ness/gaussian.hpp"
#include "ness/lindblad.hpp"
#include "ness/models.hpp"

#include <cstdint>
#include <vector>

namespace ness::oracle {

/// Dense brute force on the 2^n-dimensional Hilbert space. The operator
/// space (and every superoperator) has dimension 4^n.
inline constexpr int max_modes = 4;

/// Majorana matrices w_0..w_{2n-1} under Jordan-Wigner,
/// f_j = prod_{k<j}(-sigma^z_k) sigma^-_j. Site 0 is the most significant
/// tensor factor and |0> is spin up.
std::vector<MatrixC> majorana_matrices(int n);

/// Pauli sigma^alpha on one site of an n-site chain, alpha in {'x','y','z','+','-'}.
MatrixC spin_operator(int n, int site, char alpha);

struct DenseLiouvillean {
    int modes = 0;
    /// Acts on column-major vectorized operators.
    MatrixC matrix;
};

/// d rho/dt = -i[H, rho] + sum (2 L rho L^dag - {L^dag L, rho}) for dense
/// H and L on n modes.
DenseLiouvillean dense_liouvillean(int modes, const MatrixC& h, const std::vector<MatrixC>& ls);

/// Dense form of a quadratic Majorana Lindbladian.
DenseLiouvillean dense_liouvillean(const QuadraticLindbladian& model);

/// The boundary XY chain written with literal Pauli matrices (the
/// sigma^+-_n operators keep their full Jordan-Wigner strings).
DenseLiouvillean xy_boundary_spin_liouvillean(const XYBoundaryConfig& cfg);

struct DenseState {
    MatrixC rho;
};

/// Kernel of the Liouvillean by SVD. Throws non_unique_steady when the
/// second smallest singular value is below 1e-10.
DenseState steady_state_dense(const DenseLiouvillean& l);

/// C_ij = Tr(rho [w_i, w_j]) / 2.
MatrixC correlations_from_state(const DenseState& s);

double dense_purity(const DenseState& s);

/// <sigma^z_i> and <sigma^z_i sigma^z_j> with 1-based sites.
double dense_sz(const DenseState& s, int site);
double dense_zz(const DenseState& s, int i, int j);

/// Gaussian state rho = exp(-(i/4) w^T G w) / Z with C = tanh(iG/2).
DenseState gaussian_state(const CorrelationMatrix& c);

/// Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)).
double uhlmann_fidelity_dense(const DenseState& r1, const DenseState& r2);

/// Largest |1^dag L| entry: trace preservation.
double trace_preservation_defect(const DenseLiouvillean& l);

struct CarReport {
    int modes = 0;
    double max_anticommutator_violation = 0.0;  ///< {a_j^+, a_k} - delta_jk, {a_j, a_k}, {a_j^+, a_k^+}
    double max_vacuum_violation = 0.0;          ///< |a_j 1|
};

/// Builds a_j^+ = -(i/2) W {w_j, .}, a_j = -(i/2) W [w_j, .] with
/// W = i^n prod w_j and verifies the canonical anticommutation relations.
CarReport car_superoperator_check(int modes);

/// Superoperators a_j^+ and a_j as dense 4^n matrices.
struct LadderSuperoperators {
    std::vector<MatrixC> create;
    std::vector<MatrixC> annihilate;
};
LadderSuperoperators ladder_superoperators(int modes);

/// max |L - (-sum X_ij a_i^+ a_j - Y_ij a_i^+ a_j^+ / 2)| against the dense
/// Liouvillean of the same model.
double normal_form_defect(const QuadraticLindbladian& model);

/// Random quadratic model with a stable spectrum: Gaussian H entries and
/// `rows` Lindblad operators with Gaussian complex coefficients.
QuadraticLindbladian random_model(int modes, int rows, std::uint64_t seed);

}  // namespace ness::oracle
