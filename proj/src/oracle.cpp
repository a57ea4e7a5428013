#include "ness/oracle.hpp"
#include "ness/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace ness::oracle {

namespace {

void check_cap(int n, const char* where) {
    if (n < 1 || n > max_modes) {
        std::ostringstream os;
        os << where << ": n = " << n << " outside the dense oracle range 1.." << max_modes;
        throw Error(ErrorKind::size_cap, os.str());
    }
}

MatrixC pauli(char alpha) {
    MatrixC p = MatrixC::Zero(2, 2);
    switch (alpha) {
        case 'x': p << 0, 1, 1, 0; break;
        case 'y': p << 0, -I, I, 0; break;
        case 'z': p << 1, 0, 0, -1; break;
        case '+': p << 0, 1, 0, 0; break;
        case '-': p << 0, 0, 1, 0; break;
        case '1': p << 1, 0, 0, 1; break;
        default: throw Error(ErrorKind::domain, std::string("unknown Pauli label ") + alpha);
    }
    return p;
}

MatrixC kron(const MatrixC& a, const MatrixC& b) {
    MatrixC out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Product of single-site factors, site 0 leftmost.
MatrixC chain(const std::vector<MatrixC>& factors) {
    MatrixC out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
    return out;
}

MatrixC left(const MatrixC& a) {
    return kron(MatrixC::Identity(a.rows(), a.cols()), a);
}

MatrixC right(const MatrixC& b) {
    return kron(b.transpose(), MatrixC::Identity(b.rows(), b.cols()));
}

MatrixC unvec(const VectorC& v, Eigen::Index d) {
    return Eigen::Map<const MatrixC>(v.data(), d, d);
}

}  // namespace

MatrixC spin_operator(int n, int site, char alpha) {
    check_cap(n, "spin_operator");
    std::vector<MatrixC> f(n, pauli('1'));
    f.at(site) = pauli(alpha);
    return chain(f);
}

std::vector<MatrixC> majorana_matrices(int n) {
    check_cap(n, "majorana_matrices");
    std::vector<MatrixC> w(2 * n);
    for (int j = 0; j < n; ++j) {
        std::vector<MatrixC> fx(n, pauli('1'));
        for (int k = 0; k < j; ++k) fx[k] = -pauli('z');
        std::vector<MatrixC> fy = fx;
        fx[j] = pauli('x');
        fy[j] = pauli('y');
        w[j] = chain(fx);
        w[n + j] = chain(fy);
    }
    return w;
}

DenseLiouvillean dense_liouvillean(int modes, const MatrixC& h, const std::vector<MatrixC>& ls) {
    check_cap(modes, "dense_liouvillean");
    const Eigen::Index d = Eigen::Index(1) << modes;
    if (h.rows() != d || h.cols() != d)
        throw Error(ErrorKind::structural_input, "dense_liouvillean: Hamiltonian has the wrong dimension");
    MatrixC l = -I * (left(h) - right(h));
    for (const auto& op : ls) {
        const MatrixC ldl = op.adjoint() * op;
        l += 2.0 * kron(op.conjugate(), op) - left(ldl) - right(ldl);
    }
    return {modes, l};
}

DenseLiouvillean dense_liouvillean(const QuadraticLindbladian& model) {
    model.validate();
    const auto w = majorana_matrices(model.modes);
    const Eigen::Index d = w.front().rows();
    const int dim = 2 * model.modes;
    MatrixC h = MatrixC::Zero(d, d);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (model.hamiltonian(i, j) != 0.0) h += model.hamiltonian(i, j) * w[i] * w[j];
    std::vector<MatrixC> ls;
    for (Eigen::Index mu = 0; mu < model.lindblad.rows(); ++mu) {
        MatrixC op = MatrixC::Zero(d, d);
        for (int i = 0; i < dim; ++i) op += model.lindblad(mu, i) * w[i];
        ls.push_back(op);
    }
    return dense_liouvillean(model.modes, h, ls);
}

DenseLiouvillean xy_boundary_spin_liouvillean(const XYBoundaryConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    check_cap(n, "xy_boundary_spin_liouvillean");
    const Eigen::Index d = Eigen::Index(1) << n;
    MatrixC h = MatrixC::Zero(d, d);
    for (int j = 0; j + 1 < n; ++j) {
        h += 0.5 * (1.0 + cfg.gamma) * spin_operator(n, j, 'x') * spin_operator(n, j + 1, 'x');
        h += 0.5 * (1.0 - cfg.gamma) * spin_operator(n, j, 'y') * spin_operator(n, j + 1, 'y');
    }
    for (int j = 0; j < n; ++j) h += cfg.h * spin_operator(n, j, 'z');
    std::vector<MatrixC> ls{
        std::sqrt(cfg.gl_plus) * spin_operator(n, 0, '+'),
        std::sqrt(cfg.gl_minus) * spin_operator(n, 0, '-'),
        std::sqrt(cfg.gr_plus) * spin_operator(n, n - 1, '+'),
        std::sqrt(cfg.gr_minus) * spin_operator(n, n - 1, '-'),
    };
    return dense_liouvillean(n, h, ls);
}

DenseState steady_state_dense(const DenseLiouvillean& l) {
    Eigen::BDCSVD<MatrixC> svd(l.matrix, Eigen::ComputeFullV);
    const VectorR& sv = svd.singularValues();
    const Eigen::Index k = sv.size();
    if (k < 2 || sv(k - 2) <= 1e-10) {
        std::ostringstream os;
        os << "steady_state_dense: kernel is not one-dimensional (second smallest singular value "
           << (k >= 2 ? sv(k - 2) : 0.0) << ")";
        throw Error(ErrorKind::non_unique_steady, os.str());
    }
    const Eigen::Index d = Eigen::Index(1) << l.modes;
    MatrixC rho = unvec(svd.matrixV().col(k - 1), d);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace();
    return {rho};
}

MatrixC correlations_from_state(const DenseState& s) {
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(s.rho.rows()))));
    const auto w = majorana_matrices(n);
    MatrixC c(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j) c(i, j) = 0.5 * (s.rho * (w[i] * w[j] - w[j] * w[i])).trace();
    return c;
}

double dense_purity(const DenseState& s) {
    return (s.rho * s.rho).trace().real();
}

double dense_sz(const DenseState& s, int site) {
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(s.rho.rows()))));
    return (s.rho * spin_operator(n, site - 1, 'z')).trace().real();
}

double dense_zz(const DenseState& s, int i, int j) {
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(s.rho.rows()))));
    return (s.rho * spin_operator(n, i - 1, 'z') * spin_operator(n, j - 1, 'z')).trace().real();
}

DenseState gaussian_state(const CorrelationMatrix& c) {
    const GMatrix g = G_from_correlation(c);
    const int n = c.modes();
    const auto w = majorana_matrices(n);
    const Eigen::Index d = w.front().rows();
    MatrixC q = MatrixC::Zero(d, d);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j)
            if (g.matrix()(i, j) != 0.0) q += (-0.25 * I * g.matrix()(i, j)) * w[i] * w[j];
    q = 0.5 * (q + q.adjoint());
    const HermitianEigen e = hermitian_eigen(q);
    const double top = e.values.maxCoeff();
    MatrixC rho = hermitian_function(e, [top](double x) { return std::exp(x - top); });
    rho /= rho.trace();
    return {rho};
}

double uhlmann_fidelity_dense(const DenseState& r1, const DenseState& r2) {
    const auto clip_sqrt = [](double x) { return std::sqrt(std::max(x, 0.0)); };
    const MatrixC s1 = hermitian_function(hermitian_eigen(r1.rho), clip_sqrt);
    MatrixC inner = s1 * r2.rho * s1;
    inner = 0.5 * (inner + inner.adjoint());
    const VectorR vals = hermitian_eigen(inner).values;
    double f = 0.0;
    for (Eigen::Index i = 0; i < vals.size(); ++i) f += clip_sqrt(vals(i));
    return std::min(f, 1.0);
}

double trace_preservation_defect(const DenseLiouvillean& l) {
    const Eigen::Index d = Eigen::Index(1) << l.modes;
    const MatrixC id = MatrixC::Identity(d, d);
    const VectorC one = Eigen::Map<const VectorC>(id.data(), d * d);
    return (one.adjoint() * l.matrix).cwiseAbs().maxCoeff();
}

LadderSuperoperators ladder_superoperators(int modes) {
    check_cap(modes, "ladder_superoperators");
    const auto w = majorana_matrices(modes);
    const Eigen::Index d = w.front().rows();
    MatrixC big_w = MatrixC::Identity(d, d);
    for (const auto& wj : w) big_w = big_w * wj;
    big_w *= std::pow(I, modes);
    const MatrixC wl = left(big_w);
    LadderSuperoperators out;
    for (const auto& wj : w) {
        out.create.push_back(-0.5 * I * wl * (left(wj) + right(wj)));
        out.annihilate.push_back(-0.5 * I * wl * (left(wj) - right(wj)));
    }
    return out;
}

CarReport car_superoperator_check(int modes) {
    const LadderSuperoperators a = ladder_superoperators(modes);
    const Eigen::Index d = Eigen::Index(1) << modes;
    const Eigen::Index d2 = d * d;
    const MatrixC id2 = MatrixC::Identity(d2, d2);
    CarReport r;
    r.modes = modes;
    const std::size_t m = a.create.size();
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            const MatrixC& cj = a.create[j];
            const MatrixC& ak = a.annihilate[k];
            MatrixC mixed = cj * ak + ak * cj;
            if (j == k) mixed -= id2;
            const MatrixC aa = a.annihilate[j] * ak + ak * a.annihilate[j];
            const MatrixC cc = cj * a.create[k] + a.create[k] * cj;
            r.max_anticommutator_violation = std::max(
                {r.max_anticommutator_violation, mixed.cwiseAbs().maxCoeff(), aa.cwiseAbs().maxCoeff(),
                 cc.cwiseAbs().maxCoeff()});
        }
        const MatrixC id = MatrixC::Identity(d, d);
        const VectorC one = Eigen::Map<const VectorC>(id.data(), d2);
        r.max_vacuum_violation = std::max(r.max_vacuum_violation, (a.annihilate[j] * one).cwiseAbs().maxCoeff());
    }
    return r;
}

double normal_form_defect(const QuadraticLindbladian& model) {
    const DenseLiouvillean dense = dense_liouvillean(model);
    const StructureMatrices s = build_structure(model);
    const LadderSuperoperators a = ladder_superoperators(model.modes);
    MatrixC l = MatrixC::Zero(dense.matrix.rows(), dense.matrix.cols());
    const int dim = 2 * model.modes;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (s.x(i, j) != 0.0) l -= s.x(i, j) * a.create[i] * a.annihilate[j];
            if (s.y(i, j) != 0.0) l -= 0.5 * s.y(i, j) * a.create[i] * a.create[j];
        }
    return (l - dense.matrix).cwiseAbs().maxCoeff();
}

QuadraticLindbladian random_model(int modes, int rows, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const int dim = 2 * modes;
    MatrixR a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
    QuadraticLindbladian m;
    m.modes = modes;
    m.hamiltonian = I * (0.5 * (a - a.transpose())).cast<cplx>();
    m.lindblad.resize(rows, dim);
    for (int r = 0; r < rows; ++r)
        for (int i = 0; i < dim; ++i) m.lindblad(r, i) = cplx(normal(rng), normal(rng));
    return m;
}

}  // namespace ness::oracle
