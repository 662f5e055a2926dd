#pragma once

#include "jcsim/types.hpp"

#include <Eigen/QR>

#include <random>

namespace jcsim::test {

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline Matrix random_matrix(Index rows, Index cols) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = Complex(dist(rng()), dist(rng()));
    return m;
}

inline Matrix random_hermitian(Index dim) {
    const Matrix m = random_matrix(dim, dim);
    return 0.5 * (m + m.adjoint());
}

inline Matrix random_unitary(Index dim) {
    const Eigen::HouseholderQR<Matrix> qr(random_matrix(dim, dim));
    Matrix q = qr.householderQ();
    return q;
}

inline Matrix random_density(Index dim) {
    const Matrix m = random_matrix(dim, dim);
    Matrix rho = m * m.adjoint();
    rho /= rho.trace();
    return rho;
}

inline Vector random_ket(Index dim) {
    Vector v = random_matrix(dim, 1);
    v.normalize();
    return v;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace jcsim::test

// absolute-tolerance comparison; doctest's Approx is relative
#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
