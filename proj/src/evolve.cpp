#include "jcsim/evolve.hpp"

#include "jcsim/fock.hpp"
#include "jcsim/hamiltonian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace jcsim {

TimeGrid TimeGrid::uniform(double t_max, int n_samples) {
    if (!(t_max > 0.0))
        throw std::invalid_argument("TimeGrid: t_max must be > 0");
    if (n_samples < 2)
        throw std::invalid_argument("TimeGrid: need at least 2 samples");
    TimeGrid g;
    g.t_max = t_max;
    g.steps = n_samples - 1;
    g.samples.resize(n_samples);
    for (int k = 0; k < n_samples; ++k)
        g.samples[k] = t_max * k / (n_samples - 1);
    return g;
}

void TimeGrid::validate() const {
    if (samples.empty() || samples.front() != 0.0)
        throw std::invalid_argument("TimeGrid: samples must start at 0");
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (samples[k] <= samples[k - 1])
            throw std::invalid_argument("TimeGrid: samples must be strictly increasing");
}

std::array<Complex, 2> jcm_amplitudes(int n, double lambda_t, JcmBranch branch) {
    if (n < 0)
        throw std::invalid_argument("jcm_amplitudes: n must be >= 0");
    const double root = branch == JcmBranch::excited ? std::sqrt(n + 1.0) : std::sqrt(double(n));
    return {Complex(std::cos(root * lambda_t), 0.0),
            Complex(0.0, -std::sin(root * lambda_t))};
}

Propagator::Propagator(const Matrix& hamiltonian, SystemState initial) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("Propagator: Hamiltonian must be square");
    if (hamiltonian.rows() != initial.rho.rows())
        throw std::invalid_argument("Propagator: state and Hamiltonian dimensions differ");
    if (detail::hermiticity_defect(hamiltonian) > 1e-10)
        throw NumericalError("Propagator: Hamiltonian is not Hermitian within 1e-10");

    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
    if (es.info() != Eigen::Success)
        throw NumericalError("Propagator: eigendecomposition failed");
    basis_ = es.eigenvectors();
    energies_ = es.eigenvalues();
    rho0_eig_ = basis_.adjoint() * initial.rho * basis_;
    field_dim_ = initial.field_dim();
}

Vector Propagator::phases(double t) const {
    Vector ph(energies_.size());
    for (Index k = 0; k < ph.size(); ++k)
        ph(k) = std::polar(1.0, -energies_(k) * t);
    return ph;
}

Matrix Propagator::eigenbasis_state_at(double t) const {
    const Vector ph = phases(t);
    return ph.asDiagonal() * rho0_eig_ * ph.conjugate().asDiagonal();
}

SystemState Propagator::state_at(double t) const {
    return SystemState{basis_ * eigenbasis_state_at(t) * basis_.adjoint(), t};
}

void Propagator::build_kernels() const {
    // V_i = rows (i, n) of the eigenbasis; the (i,j) reduction kernel is
    // rho0_eig .* (V_j^dag V_i)^T.
    kernels_.resize(16);
    std::vector<Matrix> rows(4);
    for (Index i = 0; i < 4; ++i)
        rows[i] = basis_.middleRows(i * field_dim_, field_dim_);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j) {
            const Matrix o = rows[j].adjoint() * rows[i];
            kernels_[4 * i + j] = rho0_eig_.cwiseProduct(o.transpose());
        }
    kernels_ready_ = true;
}

Matrix4 Propagator::atoms_at(double t) const {
    if (!kernels_ready_)
        build_kernels();
    // entry (i,j) is sum_pq ph_p conj(ph_q) K[p,q] = c^dag K c with c = conj(ph)
    const Vector c = phases(t).conjugate();
    Matrix4 out;
    for (Index i = 0; i < 4; ++i)
        for (Index j = i; j < 4; ++j) {
            const Complex v = c.dot(kernels_[4 * i + j] * c);
            out(i, j) = v;
            if (j != i)
                out(j, i) = std::conj(v);
        }
    return out;
}

std::vector<SystemState> propagate(const SystemState& rho0, const Matrix& hamiltonian,
                                   const TimeGrid& grid) {
    grid.validate();
    Propagator prop(hamiltonian, rho0);
    std::vector<SystemState> out;
    out.reserve(grid.samples.size());
    for (double t : grid.samples)
        out.push_back(prop.state_at(t));
    return out;
}

std::vector<SystemState> paper_scheme(double theta, const Vector& fock_coefficients,
                                      const TimeGrid& grid) {
    grid.validate();
    const Index nf = fock_coefficients.size();
    if (nf < 1)
        throw std::invalid_argument("paper_scheme: empty coefficient vector");
    if (std::abs(fock_coefficients.squaredNorm() - 1.0) > 1e-10)
        throw std::invalid_argument("paper_scheme: field coefficients are not normalized");

    const double ct = std::cos(theta) / 2.0, st = std::sin(theta) / 2.0;
    std::vector<SystemState> out;
    out.reserve(grid.samples.size());
    for (double t : grid.samples) {
        Vector psi = Vector::Zero(4 * nf);
        for (Index n = 0; n < nf; ++n) {
            const Complex cn = fock_coefficients(n);
            const auto [x1, x2] = jcm_amplitudes(static_cast<int>(n), t, JcmBranch::excited);
            const auto [y1, y2] = jcm_amplitudes(static_cast<int>(n), t, JcmBranch::ground);
            psi(1 * nf + n) += ct * cn * (x1 + y1);        // |e,g,n>
            psi(2 * nf + n) += st * cn * (x1 + y1);        // |g,e,n>
            if (n + 1 < nf)
                psi(3 * nf + n + 1) += (ct + st) * cn * x2;  // |g,g,n+1>
            if (n >= 1)
                psi(0 * nf + n - 1) += (ct + st) * cn * y2;  // |e,e,n-1>
        }
        const double norm = psi.norm();
        if (norm <= 0.0)
            throw NumericalError("paper_scheme: evolved ket has zero norm");
        psi /= norm;
        out.push_back(SystemState{psi * psi.adjoint(), t});
    }
    return out;
}

SingleAtomTrack single_atom_oracle(int n, const TimeGrid& grid) {
    grid.validate();
    if (n < 0)
        throw std::invalid_argument("single_atom_oracle: n must be >= 0");
    const Index nf = n + 2;  // the |e,n> block only reaches |g,n+1>
    const Matrix h = build_single_atom(1.0, nf);

    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalError("single_atom_oracle: eigendecomposition failed");
    Vector psi0 = Vector::Zero(2 * nf);
    psi0(n) = 1.0;  // |e,n>: atom index 0 block
    const Vector psi0_eig = es.eigenvectors().adjoint() * psi0;

    SingleAtomTrack track;
    for (double t : grid.samples) {
        Vector ph(es.eigenvalues().size());
        for (Index k = 0; k < ph.size(); ++k)
            ph(k) = std::polar(1.0, -es.eigenvalues()(k) * t);
        const Vector psi = es.eigenvectors() * ph.cwiseProduct(psi0_eig).eval();
        const auto [x1, x2] = jcm_amplitudes(n, t, JcmBranch::excited);
        track.t.push_back(t);
        track.p_excited_exact.push_back(std::norm(psi(n)));
        track.p_excited_closed.push_back(std::norm(x1));
        track.p_ground_exact.push_back(std::norm(psi(nf + n + 1)));
        track.p_ground_closed.push_back(std::norm(x2));
    }
    return track;
}

}  // namespace jcsim
