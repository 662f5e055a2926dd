#include "jcsim/fock.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <numeric>
#include <utility>

namespace jcsim {

namespace {

std::mutex warn_mutex;
WarningHandler warn_handler;  // empty -> stderr

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(warn_mutex);
    return std::exchange(warn_handler, std::move(handler));
}

void warn(const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard lock(warn_mutex);
        h = warn_handler;
    }
    if (h)
        h(message);
    else
        std::cerr << "[jcsim] warning: " << message << "\n";
}

void TruncationPolicy::validate() const {
    if (n_max < 1)
        throw std::invalid_argument("TruncationPolicy: n_max must be >= 1");
    if (pad_factor < 2)
        throw std::invalid_argument("TruncationPolicy: pad_factor must be >= 2");
    if (!(tail_tol > 0.0) || tail_tol >= 1.0)
        throw std::invalid_argument("TruncationPolicy: tail_tol must be in (0,1)");
    if (n_max_limit < n_max)
        throw std::invalid_argument("TruncationPolicy: n_max_limit must be >= n_max");
}

Matrix annihilation(Index dim) {
    if (dim < 1)
        throw std::invalid_argument("annihilation: dimension must be >= 1");
    Matrix a = Matrix::Zero(dim, dim);
    for (Index n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix creation(Index dim) { return annihilation(dim).adjoint(); }

Matrix number_operator(Index dim) {
    if (dim < 1)
        throw std::invalid_argument("number_operator: dimension must be >= 1");
    Matrix n = Matrix::Zero(dim, dim);
    for (Index k = 0; k < dim; ++k)
        n(k, k) = static_cast<double>(k);
    return n;
}

Matrix parity(Index dim) {
    if (dim < 1)
        throw std::invalid_argument("parity: dimension must be >= 1");
    Matrix p = Matrix::Zero(dim, dim);
    for (Index k = 0; k < dim; ++k)
        p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
    return p;
}

namespace detail {

double hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix exp_antihermitian(const Matrix& generator) {
    const Matrix herm = Complex(0.0, 1.0) * generator;
    if (hermiticity_defect(herm) > 1e-10 * std::max(1.0, herm.cwiseAbs().maxCoeff()))
        throw NumericalError("exp_antihermitian: generator is not anti-Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    if (es.info() != Eigen::Success)
        throw NumericalError("exp_antihermitian: eigendecomposition failed");
    const RealVector& w = es.eigenvalues();
    Vector phases(w.size());
    for (Index k = 0; k < w.size(); ++k)
        phases(k) = std::polar(1.0, -w(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

Matrix displacement_full(Complex alpha, Index dim) {
    const Matrix a = annihilation(dim);
    return detail::exp_antihermitian(alpha * a.adjoint() - std::conj(alpha) * a);
}

Matrix squeeze_full(Complex zeta, Index dim) {
    const Matrix a = annihilation(dim);
    const Matrix a2 = a * a;
    return detail::exp_antihermitian(-0.5 * zeta * a2.adjoint() + 0.5 * std::conj(zeta) * a2);
}

Matrix displacement(Complex alpha, const TruncationPolicy& policy) {
    policy.validate();
    if (std::norm(alpha) > policy.n_max / 4.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "displacement: |alpha|^2 = %.3g exceeds n_max/4 = %.3g, "
                      "result may be truncation-limited",
                      std::norm(alpha), policy.n_max / 4.0);
        warn(buf);
    }
    return displacement_full(alpha, policy.workspace_dim())
        .topLeftCorner(policy.n_max, policy.n_max);
}

Matrix squeeze(Complex zeta, const TruncationPolicy& policy) {
    policy.validate();
    const double r = std::abs(zeta);
    if (r < 0.0)
        throw std::invalid_argument("squeeze: r must be >= 0");
    const double ns = std::sinh(r) * std::sinh(r);
    if (ns > policy.n_max / 4.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "squeeze: sinh^2(r) = %.3g exceeds n_max/4 = %.3g, "
                      "result may be truncation-limited",
                      ns, policy.n_max / 4.0);
        warn(buf);
    }
    return squeeze_full(zeta, policy.workspace_dim())
        .topLeftCorner(policy.n_max, policy.n_max);
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix tensor(const Matrix& a, const Matrix& b, const Matrix& c) {
    return tensor(tensor(a, b), c);
}

namespace {

struct FactorLayout {
    std::vector<Index> dims;
    std::vector<Index> strides;  // strides[f] = prod(dims[f+1..])

    explicit FactorLayout(const std::vector<Index>& d) : dims(d), strides(d.size()) {
        Index s = 1;
        for (int f = static_cast<int>(d.size()) - 1; f >= 0; --f) {
            strides[f] = s;
            s *= d[f];
        }
    }

    Index total() const {
        return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
    }
};

void check_dims(const Matrix& rho, const FactorLayout& layout, const char* op) {
    if (rho.rows() != rho.cols())
        throw std::invalid_argument(std::string(op) + ": matrix must be square");
    if (layout.dims.empty())
        throw std::invalid_argument(std::string(op) + ": dims must be nonempty");
    for (Index d : layout.dims)
        if (d < 1)
            throw std::invalid_argument(std::string(op) + ": factor dimensions must be >= 1");
    if (layout.total() != rho.rows())
        throw std::invalid_argument(std::string(op) +
                                    ": product of dims does not match matrix dimension");
}

}  // namespace

Matrix partial_trace(const Matrix& rho, const std::vector<Index>& dims,
                     const std::vector<int>& keep) {
    const FactorLayout layout(dims);
    check_dims(rho, layout, "partial_trace");
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep must be nonempty");
    std::vector<bool> kept(dims.size(), false);
    for (int f : keep) {
        if (f < 0 || f >= static_cast<int>(dims.size()))
            throw std::invalid_argument("partial_trace: keep index out of range");
        if (kept[f])
            throw std::invalid_argument("partial_trace: duplicate keep index");
        kept[f] = true;
    }

    std::vector<int> traced;
    Index kept_dim = 1, traced_dim = 1;
    std::vector<int> kept_order;
    for (int f = 0; f < static_cast<int>(dims.size()); ++f) {
        if (kept[f]) {
            kept_order.push_back(f);
            kept_dim *= dims[f];
        } else {
            traced.push_back(f);
            traced_dim *= dims[f];
        }
    }

    // Map a flat index over the kept (resp. traced) factors to its offset in
    // the full space.
    auto offsets = [&](const std::vector<int>& factors, Index count) {
        std::vector<Index> off(count);
        for (Index x = 0; x < count; ++x) {
            Index rem = x, o = 0;
            for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
                const int f = factors[k];
                o += (rem % dims[f]) * layout.strides[f];
                rem /= dims[f];
            }
            off[x] = o;
        }
        return off;
    };
    const std::vector<Index> keep_off = offsets(kept_order, kept_dim);
    const std::vector<Index> trace_off = offsets(traced, traced_dim);

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Index i = 0; i < kept_dim; ++i)
        for (Index j = 0; j < kept_dim; ++j) {
            Complex s = 0.0;
            for (Index t = 0; t < traced_dim; ++t)
                s += rho(keep_off[i] + trace_off[t], keep_off[j] + trace_off[t]);
            out(i, j) = s;
        }
    return out;
}

Matrix partial_transpose(const Matrix& rho, const std::vector<Index>& dims,
                         const std::vector<int>& transposed) {
    const FactorLayout layout(dims);
    check_dims(rho, layout, "partial_transpose");
    std::vector<bool> flip(dims.size(), false);
    for (int f : transposed) {
        if (f < 0 || f >= static_cast<int>(dims.size()))
            throw std::invalid_argument("partial_transpose: factor index out of range");
        flip[f] = true;
    }

    const Index n = rho.rows();
    const auto nf = static_cast<int>(dims.size());
    std::vector<Index> idx(nf), jdx(nf);
    Matrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        Index rem = i;
        for (int f = 0; f < nf; ++f) {
            idx[f] = rem / layout.strides[f];
            rem %= layout.strides[f];
        }
        for (Index j = 0; j < n; ++j) {
            rem = j;
            for (int f = 0; f < nf; ++f) {
                jdx[f] = rem / layout.strides[f];
                rem %= layout.strides[f];
            }
            Index ii = 0, jj = 0;
            for (int f = 0; f < nf; ++f) {
                ii += (flip[f] ? jdx[f] : idx[f]) * layout.strides[f];
                jj += (flip[f] ? idx[f] : jdx[f]) * layout.strides[f];
            }
            out(ii, jj) = rho(i, j);
        }
    }
    return out;
}

Matrix evolve_unitary(const Matrix& hamiltonian, double t) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("evolve_unitary: Hamiltonian must be square");
    if (detail::hermiticity_defect(hamiltonian) > 1e-10)
        throw NumericalError("evolve_unitary: Hamiltonian is not Hermitian within 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw NumericalError("evolve_unitary: eigendecomposition failed");
    Vector phases(es.eigenvalues().size());
    for (Index k = 0; k < phases.size(); ++k)
        phases(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace jcsim
