#include "jcsim/measures.hpp"

#include "jcsim/fock.hpp"
#include "jcsim/qubit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace jcsim {

double concurrence(const Matrix& rho_ab) {
    if (rho_ab.rows() != 4 || rho_ab.cols() != 4)
        throw std::invalid_argument("concurrence: expected a 4x4 two-qubit matrix");
    if (detail::hermiticity_defect(rho_ab) > 1e-8)
        throw std::invalid_argument("concurrence: input is not Hermitian within tolerance");
    {
        Eigen::SelfAdjointEigenSolver<Matrix4> check(rho_ab, Eigen::EigenvaluesOnly);
        if (check.eigenvalues().minCoeff() < -1e-8)
            throw std::invalid_argument("concurrence: input is not positive within tolerance");
    }

    Matrix4 spinflip = Matrix4::Zero();
    spinflip(0, 3) = -1.0;
    spinflip(1, 2) = 1.0;
    spinflip(2, 1) = 1.0;
    spinflip(3, 0) = -1.0;  // sigma_y (x) sigma_y

    const Matrix4 r = rho_ab * spinflip * rho_ab.conjugate() * spinflip;
    Eigen::ComplexEigenSolver<Matrix4> es(r, /*computeEigenvectors=*/false);
    std::array<double, 4> lam{};
    double lam_max = 0.0;
    for (int k = 0; k < 4; ++k) {
        lam[k] = std::max(0.0, es.eigenvalues()(k).real());
        lam_max = std::max(lam_max, lam[k]);
    }
    // eigenvalues at machine-noise level are exact zeros of the Wootters
    // matrix; taking their square root would turn eps into sqrt(eps)
    for (double& l : lam)
        l = l < 1e-13 * lam_max ? 0.0 : std::sqrt(l);
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double negativity_general(const Matrix& rho, const std::vector<Index>& dims,
                          const std::vector<int>& transposed) {
    const Matrix pt = partial_transpose(rho, dims, transposed);
    Eigen::SelfAdjointEigenSolver<Matrix> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("negativity: eigendecomposition failed");
    double neg = 0.0;
    for (Index k = 0; k < es.eigenvalues().size(); ++k)
        neg += std::max(0.0, -es.eigenvalues()(k));
    return neg;
}

double negativity(const SystemState& state, Cut cut) {
    const std::vector<int> transposed =
        cut == Cut::atoms_vs_field ? std::vector<int>{2} : std::vector<int>{0};
    return negativity_general(state.rho, state.factor_dims(), transposed);
}

void WignerGridSpec::validate() const {
    if (!(x_max > x_min) || !(p_max > p_min))
        throw std::invalid_argument("WignerGridSpec: empty range");
    if (nx < 2 || np < 2)
        throw std::invalid_argument("WignerGridSpec: need at least 2 points per axis");
}

double WignerGrid::integral() const {
    const double dx = (spec.x_max - spec.x_min) / (spec.nx - 1);
    const double dp = (spec.p_max - spec.p_min) / (spec.np - 1);
    return values.sum() * dx * dp;
}

namespace {

/// Displaced-parity evaluator. One eigendecomposition of i(a^dag - a) on the
/// padded workspace serves every grid point: D(s e^{i theta}) factors into
/// number-operator phases around exp(s (a^dag - a)).
class DisplacedParity {
  public:
    explicit DisplacedParity(const FieldState& field)
        : rho_(field.rho), nm_(field.rho.rows()) {
        const Index dwork = static_cast<Index>(field.policy.pad_factor) * nm_;
        const Matrix a = annihilation(dwork);
        Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, 1) * (a.adjoint() - a));
        if (es.info() != Eigen::Success)
            throw NumericalError("wigner: eigendecomposition failed");
        evals_ = es.eigenvalues();
        rows_ = es.eigenvectors().topRows(nm_);
        signs_ = RealVector(nm_);
        for (Index n = 0; n < nm_; ++n)
            signs_(n) = (n % 2 == 0) ? 1.0 : -1.0;
    }

    Matrix displacement_cropped(Complex alpha) const {
        const double s = std::abs(alpha);
        Vector ph(evals_.size());
        for (Index k = 0; k < ph.size(); ++k)
            ph(k) = std::polar(1.0, -s * evals_(k));
        Matrix core = rows_ * ph.asDiagonal() * rows_.adjoint();
        if (s > 0.0) {
            const double theta = std::arg(alpha);
            Vector rot(nm_);
            for (Index n = 0; n < nm_; ++n)
                rot(n) = std::polar(1.0, theta * static_cast<double>(n));
            core = rot.asDiagonal() * core * rot.conjugate().asDiagonal();
        }
        return core;
    }

    double value(Complex alpha) const {
        const Matrix d = displacement_cropped(alpha);
        const Matrix p = rho_ * d;
        Complex s = 0.0;
        for (Index n = 0; n < nm_; ++n)
            s += signs_(n) * d.col(n).dot(p.col(n));
        return 2.0 / M_PI * s.real();
    }

  private:
    const Matrix& rho_;
    Index nm_;
    RealVector evals_;
    Matrix rows_;
    RealVector signs_;
};

}  // namespace

WignerGrid wigner(const FieldState& field, const WignerGridSpec& spec) {
    spec.validate();
    const double corner = std::max({spec.x_min * spec.x_min, spec.x_max * spec.x_max}) +
                          std::max({spec.p_min * spec.p_min, spec.p_max * spec.p_max});
    if (corner > field.policy.n_max / 4.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "wigner: grid reaches |alpha|^2 = %.3g beyond n_max/4 = %.3g, "
                      "edge values may be truncation-limited",
                      corner, field.policy.n_max / 4.0);
        warn(buf);
    }

    WignerGrid grid;
    grid.spec = spec;
    grid.xs.resize(spec.nx);
    grid.ps.resize(spec.np);
    for (int i = 0; i < spec.nx; ++i)
        grid.xs[i] = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.nx - 1);
    for (int j = 0; j < spec.np; ++j)
        grid.ps[j] = spec.p_min + (spec.p_max - spec.p_min) * j / (spec.np - 1);

    const DisplacedParity dp(field);
    grid.values.resize(spec.nx, spec.np);
    for (int i = 0; i < spec.nx; ++i)
        for (int j = 0; j < spec.np; ++j)
            grid.values(i, j) = dp.value(Complex(grid.xs[i], grid.ps[j]));
    return grid;
}

double wigner_point(const FieldState& field, Complex alpha) {
    return DisplacedParity(field).value(alpha);
}

double atomic_inversion(const SystemState& state, Atom atom) {
    const Matrix reduced = partial_trace(state.rho, state.factor_dims(), {0, 1});
    const Matrix i2 = qubit_identity();
    const Matrix op = atom == Atom::A ? tensor(Matrix(sigma_z()), i2)
                                      : tensor(i2, Matrix(sigma_z()));
    return (reduced * op).trace().real();
}

EsdReport detect_esd(const std::vector<double>& times, const std::vector<double>& values,
                     double threshold) {
    if (times.size() != values.size())
        throw std::invalid_argument("detect_esd: times and values differ in length");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1])
            throw std::invalid_argument("detect_esd: times must be strictly increasing");

    EsdReport report;
    report.threshold = threshold;
    const std::size_t n = times.size();
    std::size_t i = 0;
    while (i < n) {
        if (values[i] < threshold) {
            std::size_t j = i;
            while (j + 1 < n && values[j + 1] < threshold)
                ++j;
            if (j - i + 1 >= 2)
                report.intervals.emplace_back(times[i], times[j]);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return report;
}

}  // namespace jcsim
