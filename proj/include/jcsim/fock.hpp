#pragma once

#include "jcsim/types.hpp"

#include <vector>

namespace jcsim {

/// Truncation parameters for field-operator construction.
///
/// Operators are built on a workspace of pad_factor*n_max Fock levels and
/// cropped to n_max; exponentials of truncated generators are corrupted near
/// the high-n corner, and cropping a larger computation keeps the retained
/// block converged. Field states must keep at least 1 - tail_tol of their
/// probability mass below n_max; constructors escalate n_max in steps of 20
/// up to n_max_limit before giving up.
struct TruncationPolicy {
    int n_max = 80;
    int pad_factor = 2;
    double tail_tol = 1e-8;
    int n_max_limit = 400;

    int workspace_dim() const { return pad_factor * n_max; }
    void validate() const;
};

/// Annihilation operator a on a dim-level Fock space: a[n-1,n] = sqrt(n).
Matrix annihilation(Index dim);

/// Creation operator a^dag.
Matrix creation(Index dim);

/// Number operator a^dag a (diagonal 0..dim-1).
Matrix number_operator(Index dim);

/// Photon-number parity operator, diag((-1)^n).
Matrix parity(Index dim);

/// exp(alpha a^dag - alpha* a) built directly on a dim-level space.
/// Exactly unitary up to eigensolver rounding; the high-n corner differs
/// from the untruncated operator.
Matrix displacement_full(Complex alpha, Index dim);

/// exp(-zeta a^dag^2/2 + zeta* a^2/2) built directly on a dim-level space.
Matrix squeeze_full(Complex zeta, Index dim);

/// Displacement operator on the retained n_max space, built on the padded
/// workspace and cropped. Warns when |alpha|^2 > n_max/4.
Matrix displacement(Complex alpha, const TruncationPolicy& policy);

/// Squeeze operator on the retained space, padded then cropped.
/// Warns when sinh^2(r) > n_max/4.
Matrix squeeze(Complex zeta, const TruncationPolicy& policy);

/// Kronecker product, left factor slowest-varying. Composite ordering is
/// fixed globally as A (x) B (x) field.
Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor(const Matrix& a, const Matrix& b, const Matrix& c);

/// Reduced matrix on the kept factors (ordering preserved), tracing out the
/// rest. dims lists the factor dimensions, slowest-varying first.
Matrix partial_trace(const Matrix& rho, const std::vector<Index>& dims,
                     const std::vector<int>& keep);

/// Transpose applied to the indicated factors only.
Matrix partial_transpose(const Matrix& rho, const std::vector<Index>& dims,
                         const std::vector<int>& transposed);

/// U = exp(-i H t) via eigendecomposition (hbar = 1, t in units of 1/lambda).
/// Throws NumericalError if H deviates from Hermitian by more than 1e-10.
Matrix evolve_unitary(const Matrix& hamiltonian, double t);

namespace detail {

/// exp(G) for anti-Hermitian G, via eigendecomposition of the Hermitian iG.
Matrix exp_antihermitian(const Matrix& generator);

/// max |M - M^dag| element.
double hermiticity_defect(const Matrix& m);

}  // namespace detail

}  // namespace jcsim
