#pragma once

#include "ness/gaussian.hpp"
#include "ness/lindblad.hpp"

#include <Eigen/QR>

#include <cstdint>
#include <random>

namespace ness::testing {

inline MatrixR random_real(int rows, int cols, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    MatrixR a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = normal(rng);
    return a;
}

inline MatrixR random_antisymmetric(int dim, std::mt19937_64& rng, double scale = 1.0) {
    const MatrixR a = random_real(dim, dim, rng, scale);
    return 0.5 * (a - a.transpose());
}

inline MatrixR random_orthogonal(int dim, std::mt19937_64& rng) {
    Eigen::HouseholderQR<MatrixR> qr(random_real(dim, dim, rng));
    return qr.householderQ();
}

/// Mixed Gaussian state, C = tanh(iG/2) with a random G.
inline CorrelationMatrix random_mixed(int modes, std::mt19937_64& rng, double scale = 1.0) {
    return correlation_from_G(GMatrix(random_antisymmetric(2 * modes, rng, scale)));
}

/// A valid correlation-matrix direction: i times a real antisymmetric matrix.
inline MatrixC random_direction(int modes, std::mt19937_64& rng) {
    return I * random_antisymmetric(2 * modes, rng).cast<cplx>();
}

/// Pure state: O C0 O^T with C0 = diag of [[0, i], [-i, 0]] blocks.
inline CorrelationMatrix random_pure(int modes, std::mt19937_64& rng) {
    MatrixC c0 = MatrixC::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        c0(2 * k, 2 * k + 1) = I;
        c0(2 * k + 1, 2 * k) = -I;
    }
    const MatrixC o = random_orthogonal(2 * modes, rng).cast<cplx>();
    return CorrelationMatrix(o * c0 * o.transpose());
}

/// Stable X with every eigenvalue in a complex-conjugate pair a +- ib, a > 0.
inline MatrixR random_paired_x(int modes, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.1, 2.0), im(0.2, 3.0);
    MatrixR blocks = MatrixR::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        const double a = re(rng), b = im(rng);
        blocks(2 * k, 2 * k) = a;
        blocks(2 * k + 1, 2 * k + 1) = a;
        blocks(2 * k, 2 * k + 1) = -b;
        blocks(2 * k + 1, 2 * k) = b;
    }
    MatrixR v = random_real(2 * modes, 2 * modes, rng);
    v += 2.0 * MatrixR::Identity(2 * modes, 2 * modes);
    return v * blocks * v.inverse();
}

inline double max_abs(const MatrixC& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace ness::testing
