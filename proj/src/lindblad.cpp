#include "ness/lindblad.hpp"
#include "ness/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ness {

void QuadraticLindbladian::validate() const {
    const int dim = 2 * modes;
    if (modes <= 0 || hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
        std::ostringstream os;
        os << "QuadraticLindbladian: Hamiltonian must be " << dim << "x" << dim;
        throw Error(ErrorKind::structural_input, os.str());
    }
    if (lindblad.rows() > 0 && lindblad.cols() != dim) {
        std::ostringstream os;
        os << "QuadraticLindbladian: Lindblad coefficients must have " << dim << " columns";
        throw Error(ErrorKind::structural_input, os.str());
    }
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    const double real_part = hamiltonian.real().cwiseAbs().maxCoeff();
    const double anti = antisymmetry_defect(hamiltonian);
    if (real_part > 1e-10 * scale || anti > 1e-10 * scale) {
        std::ostringstream os;
        os << "QuadraticLindbladian: H must be imaginary antisymmetric (real part " << real_part
           << ", antisymmetry defect " << anti << ")";
        throw Error(ErrorKind::structural_input, os.str());
    }
}

namespace {

MatrixC dissipation_matrix(const MatrixC& l) {
    // M_ij = sum_mu l_{mu i} conj(l_{mu j})
    return l.transpose() * l.conjugate();
}

}  // namespace

StructureMatrices build_structure(const QuadraticLindbladian& model) {
    model.validate();
    const int dim = 2 * model.modes;
    StructureMatrices s;
    s.m = model.lindblad.rows() > 0 ? dissipation_matrix(model.lindblad) : MatrixC::Zero(dim, dim);
    s.m = 0.5 * (s.m + s.m.adjoint());
    // iH is real for imaginary H.
    const MatrixR ih = -model.hamiltonian.imag();
    s.x = 4.0 * (ih + s.m.real());
    const MatrixR im = s.m.imag();
    s.y = (-8.0 * I) * (0.5 * (im - im.transpose())).cast<cplx>();
    return s;
}

StructureDerivative differentiate_structure(const QuadraticLindbladian& base,
                                            const MatrixC& d_hamiltonian,
                                            const MatrixC& d_lindblad) {
    const int dim = 2 * base.modes;
    MatrixC dm = MatrixC::Zero(dim, dim);
    if (d_lindblad.rows() > 0) {
        if (d_lindblad.rows() != base.lindblad.rows() || d_lindblad.cols() != dim)
            throw Error(ErrorKind::structural_input, "differentiate_structure: dl shape mismatch");
        dm = d_lindblad.transpose() * base.lindblad.conjugate() +
             base.lindblad.transpose() * d_lindblad.conjugate();
    }
    StructureDerivative d;
    d.dx = 4.0 * (MatrixR(-d_hamiltonian.imag()) + dm.real());
    const MatrixR im = dm.imag();
    d.dy = (-8.0 * I) * (0.5 * (im - im.transpose())).cast<cplx>();
    return d;
}

GapReport gap(const StructureMatrices& s) {
    GapReport report;
    const Eigen::Index dim = s.x.rows();
    if (dim == 0) return report;
    Eigen::EigenSolver<MatrixR> es(s.x, true);
    const VectorC vals = es.eigenvalues();
    MatrixC vecs = es.eigenvectors();
    for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        const double nrm = vecs.col(k).norm();
        if (nrm > 0) vecs.col(k) /= nrm;
    }
    Eigen::BDCSVD<MatrixC> svd(vecs);
    const VectorR sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    report.eigenvector_condition =
        smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    report.diagonalizable_hint = report.eigenvector_condition < diagonalizable_condition_limit;

    report.x_spectrum.assign(vals.data(), vals.data() + vals.size());
    sort_by_real_part(report.x_spectrum);
    const double min_re = report.x_spectrum.front().real();
    report.stable = min_re >= -1e-10;
    const bool marginal = std::any_of(report.x_spectrum.begin(), report.x_spectrum.end(),
                                      [](cplx x) { return std::abs(x.real()) < marginal_real_part; });
    report.delta = (!report.stable || marginal) ? 0.0 : 2.0 * min_re;
    return report;
}

namespace {

constexpr std::size_t pattern_budget = 1'000'000;

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_budget(std::size_t modes, int max_excitations) {
    double total = 0.0;
    for (int k = 0; k <= max_excitations && k <= static_cast<int>(modes); ++k)
        total += binomial(static_cast<int>(modes), k);
    if (total > static_cast<double>(pattern_budget)) {
        std::ostringstream os;
        os << "liouvillean_spectrum: " << total << " occupation patterns exceed budget " << pattern_budget;
        throw Error(ErrorKind::size_cap, os.str());
    }
}

/// Visits every subset of {0..m-1} with size 1..max_k; callback gets (sum, size).
template <class F>
void for_each_pattern(const std::vector<cplx>& x, int max_k, F&& visit) {
    const int m = static_cast<int>(x.size());
    std::vector<int> idx;
    // Depth-first enumeration in lexicographic order.
    auto rec = [&](auto&& self, int start, cplx sum) -> void {
        for (int j = start; j < m; ++j) {
            idx.push_back(j);
            const cplx s = sum + x[j];
            visit(s, static_cast<int>(idx.size()));
            if (static_cast<int>(idx.size()) < max_k) self(self, j + 1, s);
            idx.pop_back();
        }
    };
    if (max_k > 0) rec(rec, 0, cplx{0.0, 0.0});
}

}  // namespace

std::vector<cplx> liouvillean_spectrum(const std::vector<cplx>& x, int max_excitations) {
    if (max_excitations < 0) throw Error(ErrorKind::domain, "max_excitations must be >= 0");
    check_budget(x.size(), max_excitations);
    std::vector<cplx> out{cplx{0.0, 0.0}};
    for_each_pattern(x, max_excitations, [&](cplx s, int) { out.push_back(-s); });
    return out;
}

std::vector<cplx> liouvillean_spectrum(const StructureMatrices& s, int max_excitations) {
    return liouvillean_spectrum(gap(s).x_spectrum, max_excitations);
}

double even_sector_gap(const std::vector<cplx>& x, int max_excitations) {
    check_budget(x.size(), max_excitations);
    double best = std::numeric_limits<double>::infinity();
    for_each_pattern(x, max_excitations, [&](cplx s, int k) {
        if (k % 2 == 0) best = std::min(best, std::abs(s));
    });
    return best;
}

GapIdentityReport gap_identity_check(const GapReport& g) {
    if (!g.stable) {
        std::ostringstream os;
        os << "gap_identity_check: X has an eigenvalue with negative real part ("
           << g.x_spectrum.front().real() << ")";
        throw Error(ErrorKind::stability, os.str());
    }
    GapIdentityReport r;
    r.diagonalizable_hint = g.diagonalizable_hint;
    const auto& x = g.x_spectrum;
    r.delta = 2.0 * x.front().real();
    r.delta_l = even_sector_gap(x, 2);
    r.delta_xhat = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i; j < x.size(); ++j) r.delta_xhat = std::min(r.delta_xhat, std::abs(x[i] + x[j]));
    r.max_discrepancy = std::max({std::abs(r.delta - r.delta_l), std::abs(r.delta - r.delta_xhat),
                                  std::abs(r.delta_l - r.delta_xhat)});
    return r;
}

GapIdentityReport gap_identity_check(const StructureMatrices& s) { return gap_identity_check(gap(s)); }

}  // namespace ness
