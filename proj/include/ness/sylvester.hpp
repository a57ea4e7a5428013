#pragma once

#include "ness/gaussian.hpp"
#include "ness/lindblad.hpp"

#include <string>
#include <vector>

namespace ness {

enum class SylvesterMethod { schur_elimination, kron_vectorized };

const char* to_string(SylvesterMethod m);

struct SylvesterSolution {
    CorrelationMatrix c;
    double residual = 0.0;  ///< Hilbert-Schmidt norm of XC + CX^T - Y
    SylvesterMethod method = SylvesterMethod::schur_elimination;
};

/// Per-axis parameter derivatives of the steady correlation matrix.
struct DerivativeSet {
    std::vector<std::string> axes;
    std::vector<MatrixC> dc;
    std::vector<double> residuals;

    std::size_t size() const { return dc.size(); }
};

/// Residual certification threshold: |XC + CX^T - Y|_2 <= tol * max(1, |Y|_2).
inline constexpr double sylvester_residual_tolerance = 1e-8;

/// Solves X C + C X^T = R for real X through a complex Schur factorization
/// X = Q T Q^dag computed once; every right-hand side then costs one
/// triangular elimination sweep.
class SylvesterSolver {
public:
    explicit SylvesterSolver(const MatrixR& x);

    /// Raw solution of X C + C X^T = rhs.
    MatrixC solve(const MatrixC& rhs) const;

    /// 2 min Re x_i over the Schur diagonal.
    double delta() const { return delta_; }
    /// min_{i,j} |x_i + conj(x_j)|, the smallest pivot of the elimination.
    double smallest_pivot() const { return min_pivot_; }

    double residual(const MatrixC& c, const MatrixC& rhs) const;

private:
    MatrixR x_;
    MatrixC q_;
    MatrixC t_;
    double delta_ = 0.0;
    double min_pivot_ = 0.0;
};

/// Steady state of X C + C X^T = Y. Throws non_unique_steady when the gap
/// vanishes and convergence when the residual certification fails.
SylvesterSolution solve_steady(const StructureMatrices& s);
SylvesterSolution solve_steady(const StructureMatrices& s, const SylvesterSolver& solver);

/// Solves X dC + dC X^T = dY - dX C - C dX^T per axis, reusing one Schur
/// factorization of X.
DerivativeSet solve_derivatives(const StructureMatrices& s,
                                const std::vector<std::string>& axes,
                                const std::vector<StructureDerivative>& ds,
                                const CorrelationMatrix& c);
DerivativeSet solve_derivatives(const SylvesterSolver& solver,
                                const std::vector<std::string>& axes,
                                const std::vector<StructureDerivative>& ds,
                                const CorrelationMatrix& c);

/// Kronecker sum X (x) 1 + 1 (x) X acting on row-major vectorized matrices.
MatrixR kron_sum(const MatrixR& x);

inline constexpr int vectorized_max_modes = 32;

/// Dense (X (x) 1 + 1 (x) X) vec C = vec Y solve, for cross-validation at
/// small n. Throws size_cap above vectorized_max_modes.
SylvesterSolution solve_steady_vectorized(const StructureMatrices& s);

}  // namespace ness
