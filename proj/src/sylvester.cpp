#include "ness/sylvester.hpp"
#include "ness/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace ness {

const char* to_string(SylvesterMethod m) {
    return m == SylvesterMethod::schur_elimination ? "schur_elimination" : "kron_vectorized";
}

SylvesterSolver::SylvesterSolver(const MatrixR& x) : x_(x) {
    if (x.rows() != x.cols() || x.rows() == 0)
        throw Error(ErrorKind::structural_input, "SylvesterSolver: X must be square and non-empty");
    Eigen::ComplexSchur<MatrixC> schur(x.cast<cplx>());
    if (schur.info() != Eigen::Success)
        throw Error(ErrorKind::convergence, "SylvesterSolver: Schur decomposition did not converge");
    q_ = schur.matrixU();
    t_ = schur.matrixT();
    const Eigen::Index n = t_.rows();
    double min_re = std::numeric_limits<double>::infinity();
    min_pivot_ = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        min_re = std::min(min_re, t_(i, i).real());
        for (Eigen::Index j = 0; j < n; ++j)
            min_pivot_ = std::min(min_pivot_, std::abs(t_(i, i) + std::conj(t_(j, j))));
    }
    delta_ = 2.0 * min_re;
}

MatrixC SylvesterSolver::solve(const MatrixC& rhs) const {
    const Eigen::Index n = t_.rows();
    if (rhs.rows() != n || rhs.cols() != n)
        throw Error(ErrorKind::structural_input, "SylvesterSolver: right-hand side has the wrong shape");
    // X^T = X^dag = Q T^dag Q^dag, so with Z = Q^dag C Q the equation reads
    // T Z + Z T^dag = Q^dag R Q. Column j couples only to columns k > j.
    MatrixC w = q_.adjoint() * rhs * q_;
    MatrixC z(n, n);
    VectorC col(n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        col = w.col(j);
        if (j + 1 < n) col.noalias() -= z.rightCols(n - j - 1) * t_.row(j).tail(n - j - 1).adjoint();
        const cplx shift = std::conj(t_(j, j));
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            cplx acc = col(i);
            if (i + 1 < n)
                acc -= t_.row(i).tail(n - i - 1).transpose().cwiseProduct(z.col(j).tail(n - i - 1)).sum();
            z(i, j) = acc / (t_(i, i) + shift);
        }
    }
    return q_ * z * q_.adjoint();
}

double SylvesterSolver::residual(const MatrixC& c, const MatrixC& rhs) const {
    const MatrixC xc = x_.cast<cplx>();
    return (xc * c + c * xc.transpose() - rhs).norm();
}

namespace {

void require_gap(double delta, const char* where) {
    if (!(delta > marginal_real_part)) {
        std::ostringstream os;
        os << where << ": Liouvillean gap " << delta << " is not positive, steady state not unique";
        throw Error(ErrorKind::non_unique_steady, os.str());
    }
}

void certify(double residual, const MatrixC& rhs, const char* where) {
    const double limit = sylvester_residual_tolerance * std::max(1.0, rhs.norm());
    if (!(residual <= limit)) {
        std::ostringstream os;
        os.precision(3);
        os << where << ": residual " << residual << " exceeds certification limit " << limit;
        throw Error(ErrorKind::convergence, os.str());
    }
}

CorrelationMatrix certified_correlation(const MatrixC& projected) {
    return CorrelationMatrix(projected, 1e-8);
}

}  // namespace

SylvesterSolution solve_steady(const StructureMatrices& s, const SylvesterSolver& solver) {
    require_gap(solver.delta(), "solve_steady");
    MatrixC c = project_imag_antisymmetric(solver.solve(s.y));
    const double res = solver.residual(c, s.y);
    certify(res, s.y, "solve_steady");
    return {certified_correlation(c), res, SylvesterMethod::schur_elimination};
}

SylvesterSolution solve_steady(const StructureMatrices& s) {
    return solve_steady(s, SylvesterSolver(s.x));
}

DerivativeSet solve_derivatives(const SylvesterSolver& solver,
                                const std::vector<std::string>& axes,
                                const std::vector<StructureDerivative>& ds,
                                const CorrelationMatrix& c) {
    if (axes.size() != ds.size())
        throw Error(ErrorKind::structural_input, "solve_derivatives: axis/derivative count mismatch");
    require_gap(solver.delta(), "solve_derivatives");
    DerivativeSet out;
    out.axes = axes;
    const MatrixC& cm = c.matrix();
    for (const auto& d : ds) {
        const MatrixC dx = d.dx.cast<cplx>();
        const MatrixC rhs = d.dy - dx * cm - cm * dx.transpose();
        MatrixC dc = project_imag_antisymmetric(solver.solve(rhs));
        const double res = solver.residual(dc, rhs);
        certify(res, rhs, "solve_derivatives");
        out.dc.push_back(std::move(dc));
        out.residuals.push_back(res);
    }
    return out;
}

DerivativeSet solve_derivatives(const StructureMatrices& s,
                                const std::vector<std::string>& axes,
                                const std::vector<StructureDerivative>& ds,
                                const CorrelationMatrix& c) {
    return solve_derivatives(SylvesterSolver(s.x), axes, ds, c);
}

MatrixR kron_sum(const MatrixR& x) {
    const Eigen::Index n = x.rows();
    MatrixR k = MatrixR::Zero(n * n, n * n);
    // Row-major vec: |i><j| -> e_{i*n + j}; (X (x) 1) acts on i, (1 (x) X) on j.
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index a = 0; a < n; ++a) {
                k(i * n + j, a * n + j) += x(i, a);
                k(i * n + j, i * n + a) += x(j, a);
            }
    return k;
}

SylvesterSolution solve_steady_vectorized(const StructureMatrices& s) {
    const Eigen::Index dim = s.x.rows();
    if (dim / 2 > vectorized_max_modes) {
        std::ostringstream os;
        os << "solve_steady_vectorized: n = " << dim / 2 << " exceeds cap " << vectorized_max_modes;
        throw Error(ErrorKind::size_cap, os.str());
    }
    const VectorC x = eigenvalues(s.x);
    double delta_xhat = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = 0; j < x.size(); ++j) delta_xhat = std::min(delta_xhat, std::abs(x(i) + x(j)));
    if (!(delta_xhat > marginal_real_part)) {
        std::ostringstream os;
        os << "solve_steady_vectorized: Kronecker sum is singular (Delta_Xhat = " << delta_xhat << ")";
        throw Error(ErrorKind::non_unique_steady, os.str());
    }
    const Eigen::PartialPivLU<MatrixR> lu(kron_sum(s.x));
    VectorR yr(dim * dim), yi(dim * dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            yr(i * dim + j) = s.y(i, j).real();
            yi(i * dim + j) = s.y(i, j).imag();
        }
    const VectorR cr = lu.solve(yr), ci = lu.solve(yi);
    MatrixC c(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) c(i, j) = cplx(cr(i * dim + j), ci(i * dim + j));
    c = project_imag_antisymmetric(c);
    const MatrixC xc = s.x.cast<cplx>();
    const double res = (xc * c + c * xc.transpose() - s.y).norm();
    certify(res, s.y, "solve_steady_vectorized");
    return {certified_correlation(c), res, SylvesterMethod::kron_vectorized};
}

}  // namespace ness
