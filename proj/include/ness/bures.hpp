#pragma once

#include "ness/gaussian.hpp"
#include "ness/lindblad.hpp"
#include "ness/sylvester.hpp"

#include <string>
#include <vector>

namespace ness {

/// Terms with |1 - c_r c_s| below this are dropped from the metric sums.
inline constexpr double metric_pseudo_inverse_cut = 1e-10;

/// Fidelity metric g on an ordered set of parameter axes, so that
/// ds^2 = sum g_ij dl_i dl_j.
struct MetricTensor {
    std::vector<std::string> axes;
    MatrixR g;

    /// |g|, the largest eigenvalue.
    double largest_eigenvalue() const;
    /// Entry by axis names; throws domain for unknown names.
    double at(const std::string& a, const std::string& b) const;
    int index_of(const std::string& axis) const;
};

/// ds^2 = Tr[dC (1 - Ad_C)^+ dC] = sum_rs |dC_rs|^2 / (1 - c_r c_s) in the
/// eigenbasis of C.
double line_element(const CorrelationMatrix& c, const MatrixC& dc);

MetricTensor metric_tensor(const CorrelationMatrix& c, const DerivativeSet& dcs);

/// Uhlmann fidelity of two mixed Gaussian states from their T matrices:
/// F = det[1 + sqrt(sqrt(T) T' sqrt(T))]^{1/2} / (det[1+T] det[1+T'])^{1/4}.
double gaussian_fidelity(const CorrelationMatrix& c1, const CorrelationMatrix& c2);

struct BoundReport {
    double ds2 = 0.0;
    double ds2_per_n = 0.0;
    double p_c = 1.0;           ///< 1 / (1 - |C|^2)
    double cs_bound = 0.0;      ///< 2 n P_C |dC|^2, bounds ds2
    double gap_bound = 0.0;     ///< 2 P_C / Delta^2 (|dY| + 2|dX|)^2, bounds ds2 / n
    double delta = 0.0;
    bool gap_bound_defined = false;
    bool cs_satisfied = false;
    bool gap_satisfied = false;  ///< true when undefined is not the case and the bound holds
};

inline constexpr double bound_slack = 1e-9;

/// Evaluates both upper bounds for one parameter direction. Norms are
/// spectral norms. A zero gap leaves the gap bound undefined.
BoundReport bound_report(const StructureMatrices& s, const StructureDerivative& ds,
                         const CorrelationMatrix& c, const MatrixC& dc);

}  // namespace ness
