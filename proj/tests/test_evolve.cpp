#include "jcsim/evolve.hpp"

#include "jcsim/fock.hpp"
#include "jcsim/hamiltonian.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace jcsim;
using test::max_abs;

TEST_CASE("time grid") {
    const TimeGrid g = TimeGrid::uniform(10.0, 2001);
    CHECK(g.samples.size() == 2001);
    CHECK(g.samples.front() == 0.0);
    CHECK_NEAR(g.samples.back(), 10.0, 1e-12);
    CHECK(g.steps == 2000);
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1), std::invalid_argument);
}

TEST_CASE("jcm amplitudes") {
    const auto excited = jcm_amplitudes(0, M_PI / 2, JcmBranch::excited);
    CHECK(std::abs(excited[0]) < 1e-15);
    CHECK(std::abs(excited[1] - Complex(0.0, -1.0)) < 1e-15);

    for (int n : {0, 3, 11}) {
        const auto at0 = jcm_amplitudes(n, 0.0, JcmBranch::excited);
        CHECK(at0[0] == Complex(1.0, 0.0));
        CHECK(at0[1] == Complex(0.0, 0.0));
    }
    CHECK(jcm_amplitudes(0, 0.7, JcmBranch::ground)[0] == Complex(1.0, 0.0));

    std::uniform_real_distribution<double> time_dist(0.0, 20.0);
    std::uniform_int_distribution<int> n_dist(0, 30);
    for (int k = 0; k < 50; ++k) {
        const auto branch = k % 2 ? JcmBranch::excited : JcmBranch::ground;
        const auto amp = jcm_amplitudes(n_dist(test::rng()), time_dist(test::rng()), branch);
        CHECK_NEAR(std::norm(amp[0]) + std::norm(amp[1]), 1.0, 1e-12);
    }
}

TEST_CASE("propagate basics") {
    const Matrix h = test::random_hermitian(8);
    const SystemState rho0{test::random_density(8), 0.0};
    const TimeGrid g = TimeGrid::uniform(2.0, 5);

    const auto seq = propagate(rho0, h, g);
    CHECK(seq.size() == 5);
    CHECK(max_abs(seq[0].rho - rho0.rho) < 1e-12);
    CHECK_NEAR(seq[2].time, 1.0, 1e-15);

    const auto frozen = propagate(rho0, Matrix::Zero(8, 8), g);
    for (const auto& s : frozen)
        CHECK(max_abs(s.rho - rho0.rho) < 1e-12);

    CHECK_THROWS_AS(propagate(rho0, test::random_matrix(8, 8), g), NumericalError);
}

TEST_CASE("vacuum Rabi oscillation of a single coupled atom") {
    // |e,0> with one atom coupled: |g> population is sin^2(lambda t)
    const Index nf = 6;
    const Matrix h = build_single_atom(1.0, nf);
    Matrix rho0 = Matrix::Zero(2 * nf, 2 * nf);
    rho0(0, 0) = 1.0;  // |e,0>
    const Propagator prop(h, SystemState{rho0, 0.0});
    const SystemState s = prop.state_at(M_PI / 2);
    double ground_pop = 0.0;
    for (Index n = 0; n < nf; ++n)
        ground_pop += s.rho(nf + n, nf + n).real();
    CHECK_NEAR(ground_pop, 1.0, 1e-12);
}

TEST_CASE("single-atom oracle matches the closed form") {
    const TimeGrid g = TimeGrid::uniform(10.0, 401);
    for (int n : {0, 1, 5}) {
        const SingleAtomTrack track = single_atom_oracle(n, g);
        double worst = 0.0, norm_err = 0.0;
        for (std::size_t k = 0; k < track.t.size(); ++k) {
            worst = std::max(worst, std::abs(track.p_excited_exact[k] -
                                             track.p_excited_closed[k]));
            worst = std::max(worst, std::abs(track.p_ground_exact[k] -
                                             track.p_ground_closed[k]));
            norm_err = std::max(norm_err, std::abs(track.p_excited_exact[k] +
                                                   track.p_ground_exact[k] - 1.0));
        }
        CHECK(worst < 1e-10);
        CHECK(norm_err < 1e-12);
    }
    // n = 0 period: back to the excited state at lambda t = pi
    const SingleAtomTrack t0 = single_atom_oracle(0, TimeGrid::uniform(M_PI, 3));
    CHECK_NEAR(t0.p_excited_exact.back(), 1.0, 1e-10);
}

TEST_CASE("propagator preserves the physics invariants") {
    const Index nf = 8;
    ModelSpec spec;
    spec.policy = TruncationPolicy{static_cast<int>(nf), 2, 1e-8, 400};
    spec.omega = 10.0;
    spec.nu = 10.0;
    spec.jz = 0.2;
    spec.gd = 1.0;
    const Matrix h = build(spec);
    const Matrix rho0 = tensor(test::random_density(4), test::random_density(nf));
    const Propagator prop(h, SystemState{rho0, 0.0});

    const double h_norm = h.cwiseAbs().maxCoeff();
    for (double t : {0.3, 1.1, 4.7, 9.9}) {
        const SystemState s = prop.state_at(t);
        CHECK_NEAR(s.rho.trace().real(), 1.0, 1e-10);
        CHECK(max_abs(s.rho - s.rho.adjoint()) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> es(s.rho, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-8);
        CHECK(std::abs((s.rho * h).trace().real() - (rho0 * h).trace().real()) <
              1e-8 * h_norm);
    }
}

TEST_CASE("reduced-state kernels agree with the partial trace") {
    const Index nf = 7;
    const Matrix h = test::random_hermitian(4 * nf);
    const Matrix rho0 = test::random_density(4 * nf);
    const Propagator prop(h, SystemState{rho0, 0.0});
    for (double t : {0.0, 0.8, 3.3}) {
        const SystemState s = prop.state_at(t);
        const Matrix direct = partial_trace(s.rho, {2, 2, nf}, {0, 1});
        CHECK(max_abs(Matrix(prop.atoms_at(t)) - direct) < 1e-12);
    }
}

TEST_CASE("paper scheme") {
    // normalized coherent coefficients
    const Index nf = 40;
    Vector c(nf);
    double logw = -5.0;
    for (Index n = 0; n < nf; ++n) {
        if (n > 0)
            logw += std::log(5.0) - std::log(static_cast<double>(n));
        c(n) = std::sqrt(std::exp(logw));
    }
    c.normalize();

    const TimeGrid g = TimeGrid::uniform(1.0, 3);
    const auto seq = paper_scheme(M_PI / 4, c, g);
    CHECK(seq.size() == 3);

    // t = 0 recovers the initial projector
    Vector psi0 = Vector::Zero(4 * nf);
    for (Index n = 0; n < nf; ++n) {
        psi0(1 * nf + n) = std::cos(M_PI / 4) * c(n);
        psi0(2 * nf + n) = std::sin(M_PI / 4) * c(n);
    }
    CHECK(max_abs(seq[0].rho - psi0 * psi0.adjoint()) < 1e-12);
    for (const auto& s : seq)
        CHECK_NEAR(s.rho.trace().real(), 1.0, 1e-12);

    // vacuum field: no |e,e,n-1> component can appear
    Vector vac = Vector::Zero(8);
    vac(0) = 1.0;
    const auto vac_seq = paper_scheme(M_PI / 4, vac, TimeGrid::uniform(2.0, 5));
    for (const auto& s : vac_seq) {
        double ee = 0.0;
        for (Index n = 0; n < 8; ++n)
            ee += s.rho(n, n).real();  // |e,e,.> block is the first 8 rows
        CHECK(ee < 1e-12);
    }

    Vector bad = Vector::Ones(4);
    CHECK_THROWS_AS(paper_scheme(0.5, bad, g), std::invalid_argument);
}
