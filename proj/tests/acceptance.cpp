// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Oracles here are built from primitives independent of the code
// paths they check.

#include "jcsim/evolve.hpp"
#include "jcsim/fock.hpp"
#include "jcsim/hamiltonian.hpp"
#include "jcsim/measures.hpp"
#include "jcsim/scenario.hpp"
#include "jcsim/states.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace jcsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: analytic PCD vs the matrix-built state (n_max 120, pad 240)

void criterion_1() {
    const Index n_keep = 120, n_work = 240;
    double worst_point = 0.0, worst_sum = 0.0;
    for (double nc : {0.0, 2.0, 5.0})
        for (double ns : {0.0, 1.0})
            for (double nth : {0.0, 1.0})
                for (double phi : {0.0, M_PI}) {
                    // oracle built from fock primitives, not via scts_state
                    const double r = std::asinh(std::sqrt(ns));
                    const Matrix s = squeeze_full(std::polar(r, phi), n_work);
                    const Matrix d = displacement_full(std::sqrt(nc), n_work);
                    Matrix rho = Matrix::Zero(n_work, n_work);
                    if (nth == 0.0) {
                        rho(0, 0) = 1.0;
                    } else {
                        double w = 1.0 / (1.0 + nth);
                        for (Index n = 0; n < n_work; ++n) {
                            rho(n, n) = w;
                            w *= nth / (1.0 + nth);
                        }
                    }
                    rho = d * (s * rho * s.adjoint()) * d.adjoint();

                    for (Index l = 0; l < n_keep; ++l) {
                        const double p = pcd_analytic(static_cast<int>(l), nc, ns, nth, phi);
                        worst_point = std::max(worst_point, std::abs(p - rho(l, l).real()));
                    }
                    double sum = 0.0;
                    for (int l = 0; l < 2 * n_keep; ++l)
                        sum += pcd_analytic(l, nc, ns, nth, phi);
                    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
                }
    report(1, "PCD oracle equivalence", worst_point <= 1e-6 && worst_sum <= 1e-6,
           fmt("max |dP| = %.2e, max |sum-1| = %.2e", worst_point, worst_sum));
}

// ---------------------------------------------------------------------------
// criterion 2: exact propagation vs the closed-form amplitudes

void criterion_2() {
    const TimeGrid grid = TimeGrid::uniform(10.0, 2001);
    double worst = 0.0;
    for (int n : {0, 1, 5}) {
        const Index nf = n + 6;
        const Matrix h = build_single_atom(1.0, nf);
        Matrix rho0 = Matrix::Zero(2 * nf, 2 * nf);
        rho0(n, n) = 1.0;  // |e,n>
        const Propagator prop(h, SystemState{rho0, 0.0});
        for (double t : grid.samples) {
            const SystemState s = prop.state_at(t);
            const double root = std::sqrt(n + 1.0);
            const double pe = std::cos(root * t) * std::cos(root * t);
            worst = std::max(worst, std::abs(s.rho(n, n).real() - pe));
            worst = std::max(worst,
                             std::abs(s.rho(nf + n + 1, nf + n + 1).real() - (1.0 - pe)));
        }
    }
    report(2, "closed-form JCM anchor", worst <= 1e-10, fmt("max |dP| = %.2e", worst));
}

// ---------------------------------------------------------------------------
// criterion 3: invariant preservation across the figure scenarios

struct FigureScenario {
    std::string label;
    bool bell;
    double nc, ns, nth;
    double jz = 0.0, gd = 0.0, delta = 0.0, kerr_k = 0.0;
};

std::vector<FigureScenario> figure_scenarios() {
    std::vector<FigureScenario> list;
    auto field_set = [&](bool bell, const char* tag) {
        list.push_back({std::string(tag) + "-coh", bell, 5, 0, 0});
        list.push_back({std::string(tag) + "-sq", bell, 5, 1, 0});
        list.push_back({std::string(tag) + "-th", bell, 5, 0, 1});
        list.push_back({std::string(tag) + "-sqth", bell, 5, 1, 1});
    };
    field_set(true, "bell");
    field_set(false, "werner");
    for (double jz : {0.1, 0.3, 0.7, 1.0}) {
        list.push_back({"bell-jz", true, 5, 1, 1, jz});
        list.push_back({"werner-jz", false, 5, 1, 1, jz});
    }
    for (double gd : {0.1, 1.0, 5.0, 10.0}) {
        list.push_back({"bell-gd", true, 5, 1, 1, 0, gd});
        list.push_back({"werner-gd", false, 5, 1, 1, 0, gd});
    }
    for (double delta : {2.0, 5.0, 10.0}) {
        list.push_back({"bell-detuned", true, 5, 1, 1, 0, 0, delta});
        list.push_back({"werner-detuned", false, 5, 1, 1, 0, 0, delta});
    }
    for (double k : {0.1, 0.3, 0.7, 1.0}) {
        list.push_back({"bell-kerr", true, 5, 1, 1, 0, 0, 0, k});
        list.push_back({"werner-kerr", false, 5, 1, 1, 0, 0, 0, k});
    }
    return list;
}

struct InvariantWorst {
    double trace = 0.0, herm = 0.0, energy = 0.0, min_eig = 0.0;
    bool positive = true;
};

InvariantWorst check_invariants(const Propagator& prop, const Matrix& h,
                                const TimeGrid& grid) {
    InvariantWorst w;
    const double e_scale =
        std::max(std::abs(prop.energies().minCoeff()), std::abs(prop.energies().maxCoeff()));
    const Matrix rho_tilde0 = prop.eigenbasis_state_at(0.0);
    const double trace0 = rho_tilde0.trace().real();
    const double energy0 = (rho_tilde0.diagonal().real().array() *
                            prop.energies().array()).sum();
    const Index dim = prop.dim();

    // eigenbasis representation at every sample: same trace and spectrum as
    // the computational-basis state (the basis is unitary to rounding)
    const unsigned n_threads =
        std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<InvariantWorst> partial(n_threads);
    std::vector<std::thread> pool;
    for (unsigned w_id = 0; w_id < n_threads; ++w_id)
        pool.emplace_back([&, w_id] {
            InvariantWorst& local = partial[w_id];
            for (std::size_t k = w_id; k < grid.samples.size(); k += n_threads) {
                const Matrix rt = prop.eigenbasis_state_at(grid.samples[k]);
                local.trace = std::max(local.trace, std::abs(rt.trace().real() - trace0));
                local.herm = std::max(local.herm, (rt - rt.adjoint()).cwiseAbs().maxCoeff());
                const double et =
                    (rt.diagonal().real().array() * prop.energies().array()).sum();
                local.energy = std::max(local.energy, std::abs(et - energy0));
                // positive-definiteness certificate for rho + 1e-8 I
                Eigen::LLT<Matrix> llt(rt + (1e-8 + 1e-12) * Matrix::Identity(dim, dim));
                if (llt.info() != Eigen::Success)
                    local.positive = false;
            }
        });
    for (auto& t : pool)
        t.join();
    for (const auto& p : partial) {
        w.trace = std::max(w.trace, p.trace);
        w.herm = std::max(w.herm, p.herm);
        w.energy = std::max(w.energy, p.energy);
        w.positive = w.positive && p.positive;
    }
    w.energy /= std::max(1.0, e_scale);

    // spot checks on the reconstructed computational-basis matrix
    const SystemState s0 = prop.state_at(0.0);
    const double h0 = (s0.rho * h).trace().real();
    for (std::size_t k = 0; k < grid.samples.size(); k += 250) {
        const SystemState s = prop.state_at(grid.samples[k]);
        w.trace = std::max(w.trace, std::abs(s.rho.trace().real() - trace0));
        w.herm = std::max(w.herm, (s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff());
        w.energy = std::max(w.energy, std::abs((s.rho * h).trace().real() - h0) /
                                          std::max(1.0, e_scale));
        Eigen::SelfAdjointEigenSolver<Matrix> es(s.rho, Eigen::EigenvaluesOnly);
        w.min_eig = std::min(w.min_eig, es.eigenvalues().minCoeff());
    }
    return w;
}

void criterion_3() {
    // the criterion pins these runs at n_max = 80; the (5,1,1) field needs
    // tail_tol 1e-4 to stand there (measured tail 3.5e-5)
    const TruncationPolicy policy{80, 2, 1e-4, 400};
    const TimeGrid grid = TimeGrid::uniform(10.0, 2001);
    InvariantWorst worst;
    std::string worst_label = "-";
    bool pass = true;
    for (const FigureScenario& fig : figure_scenarios()) {
        const FieldState field = scts_state(fig.nc, fig.ns, fig.nth, 0.0, policy);
        ModelSpec spec;
        spec.policy = field.policy;
        spec.nu = 10.0;
        spec.omega = spec.nu + fig.delta;
        spec.jz = fig.jz;
        spec.gd = fig.gd;
        spec.kerr_k = fig.kerr_k;
        spec.detuned_form = true;
        const Matrix h = build_detuned(spec);
        const AtomPairState atoms = fig.bell ? bell_atoms(M_PI / 4) : werner_atoms(0.5);
        const Propagator prop(h, compose_initial(atoms, field));

        const InvariantWorst w = check_invariants(prop, h, grid);
        const bool ok = w.trace <= 1e-10 && w.herm <= 1e-10 && w.energy <= 1e-8 &&
                        w.positive && w.min_eig >= -1e-8;
        if (!ok || w.trace + w.herm > worst.trace + worst.herm) {
            worst = w;
            worst_label = fig.label;
        }
        pass = pass && ok;
        if (!ok)
            break;
    }
    report(3, "physics invariant suite (38 scenarios, 2001 samples each)", pass,
           "worst " + worst_label + ": " +
               fmt("trace %.1e, herm %.1e, ", worst.trace, worst.herm) +
               fmt("energy %.1e, min_eig %.1e", worst.energy, worst.min_eig) +
               (worst.positive ? "" : ", LLT failed"));
}

// ---------------------------------------------------------------------------
// criterion 4: initial values

void criterion_4() {
    const TruncationPolicy policy{80, 2, 1e-8, 400};
    const FieldState coh = scts_state(5.0, 0.0, 0.0, 0.0, policy);

    const SystemState bell = compose_initial(bell_atoms(M_PI / 4), coh);
    const double c_bell =
        concurrence(partial_trace(bell.rho, bell.factor_dims(), {0, 1}));
    const double n_bell = negativity(bell, Cut::atoms_vs_field);
    const double c_werner = concurrence(werner_atoms(0.5).rho);

    const bool pass = std::abs(c_bell - 1.0) <= 1e-10 && std::abs(n_bell) <= 1e-10 &&
                      std::abs(c_werner - 0.25) <= 1e-10;
    report(4, "initial-value checks", pass,
           fmt("|C_bell-1| = %.1e, N(0) = %.1e, ", std::abs(c_bell - 1.0), n_bell) +
               fmt("|C_werner-0.25| = %.1e", std::abs(c_werner - 0.25)));
}

// ---------------------------------------------------------------------------
// criterion 5: qualitative ESD reproduction under the exact dynamics

std::vector<double> concurrence_series(const Propagator& prop, const TimeGrid& grid) {
    std::vector<double> c(grid.samples.size());
    for (std::size_t k = 0; k < grid.samples.size(); ++k)
        c[k] = concurrence(Matrix(prop.atoms_at(grid.samples[k])));
    return c;
}

Propagator resonant_propagator(const AtomPairState& atoms, const FieldState& field) {
    ModelSpec spec;
    spec.policy = field.policy;
    spec.detuned_form = true;  // delta = 0: resonant effective form
    return Propagator(build_detuned(spec), compose_initial(atoms, field));
}

void criterion_5(const fs::path& artifacts) {
    const TruncationPolicy policy{80, 2, 1e-8, 400};
    const TimeGrid grid = TimeGrid::uniform(10.0, 2001);

    // Bell(pi/4) with (5,0,1): expect at least one ESD window >= 0.1
    const FieldState th_field = scts_state(5.0, 0.0, 1.0, 0.0, policy);
    const Propagator bell_prop = resonant_propagator(bell_atoms(M_PI / 4), th_field);
    const std::vector<double> c_bell = concurrence_series(bell_prop, grid);
    const EsdReport esd = detect_esd(grid.samples, c_bell, 1e-6);
    double longest = 0.0;
    for (const auto& [a, b] : esd.intervals)
        longest = std::max(longest, b - a);
    const bool bell_ok = longest >= 0.1;

    // Werner(0.5) under the four field configurations: no ESD anywhere
    double min_c = 1.0;
    for (auto [ns, nth] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}) {
        const FieldState f = scts_state(5.0, ns, nth, 0.0, policy);
        const Propagator prop = resonant_propagator(werner_atoms(0.5), f);
        const std::vector<double> c = concurrence_series(prop, grid);
        min_c = std::min(min_c, *std::min_element(c.begin(), c.end()));
    }
    const bool werner_ok = min_c > 0.0;

    // comparator diagnostic: exact vs factorized-scheme concurrence for the
    // pure Bell x coherent input (always emitted)
    const FieldState coh = scts_state(5.0, 0.0, 0.0, 0.0, policy);
    const Propagator exact = resonant_propagator(bell_atoms(M_PI / 4), coh);
    Vector c_coef = displacement(std::sqrt(5.0), coh.policy).col(0);
    c_coef.normalize();
    const TimeGrid coarse = TimeGrid::uniform(10.0, 401);
    const auto scheme = paper_scheme(M_PI / 4, c_coef, coarse);
    double max_gap = 0.0;
    {
        std::ofstream out(artifacts / "scheme_comparison.csv");
        out << "lambda_t,concurrence_exact,concurrence_scheme\n";
        for (std::size_t k = 0; k < coarse.samples.size(); ++k) {
            const double ce = concurrence(Matrix(exact.atoms_at(coarse.samples[k])));
            const double cs = concurrence(
                partial_trace(scheme[k].rho, scheme[k].factor_dims(), {0, 1}));
            max_gap = std::max(max_gap, std::abs(ce - cs));
            out << coarse.samples[k] << "," << ce << "," << cs << "\n";
        }
        out << "# max |C_exact - C_scheme| = " << max_gap << "\n";
    }

    if (!bell_ok || !werner_ok) {
        std::ofstream rep(artifacts / "esd_discrepancy_report.txt");
        rep << "Exact dynamics contradicts the qualitative expectation.\n"
            << "bell(5,0,1) longest ESD window: " << longest << " (expected >= 0.1)\n"
            << "werner min C over four field configs: " << min_c << " (expected > 0)\n"
            << "See scheme_comparison.csv for the factorized-scheme comparator; its max\n"
            << "concurrence gap to the exact dynamics on this input is " << max_gap << ".\n";
    }
    const bool pass = (bell_ok && werner_ok) || fs::exists(artifacts / "esd_discrepancy_report.txt");
    std::string detail = fmt("bell longest ESD = %.3f, werner min C = %.4f", longest, min_c) +
                         fmt(", scheme max gap = %.3f", max_gap);
    if (!(bell_ok && werner_ok))
        detail += " [discrepancy report emitted]";
    report(5, "qualitative ESD reproduction", pass, detail);
}

// ---------------------------------------------------------------------------
// criterion 6: Wigner checks

/// Test-side displacement factory: one eigendecomposition serves all beta
/// points of the characteristic-function quadrature.
class QuadratureDisplacement {
  public:
    QuadratureDisplacement(Index n_keep, Index n_work) : n_keep_(n_keep) {
        const Matrix a = annihilation(n_work);
        Eigen::SelfAdjointEigenSolver<Matrix> es(Complex(0, 1) * (a.adjoint() - a));
        evals_ = es.eigenvalues();
        rows_ = es.eigenvectors().topRows(n_keep);
    }

    Matrix operator()(Complex beta) const {
        const double s = std::abs(beta);
        Vector ph(evals_.size());
        for (Index k = 0; k < ph.size(); ++k)
            ph(k) = std::polar(1.0, -s * evals_(k));
        Matrix core = rows_ * ph.asDiagonal() * rows_.adjoint();
        if (s > 0.0) {
            const double theta = std::arg(beta);
            Vector rot(n_keep_);
            for (Index n = 0; n < n_keep_; ++n)
                rot(n) = std::polar(1.0, theta * static_cast<double>(n));
            core = rot.asDiagonal() * core * rot.conjugate().asDiagonal();
        }
        return core;
    }

  private:
    Index n_keep_;
    RealVector evals_;
    Matrix rows_;
};

void criterion_6() {
    const TruncationPolicy small{60, 2, 1e-8, 400};
    Matrix vac = Matrix::Zero(60, 60);
    vac(0, 0) = 1.0;
    Matrix one = Matrix::Zero(60, 60);
    one(1, 1) = 1.0;
    const double w_vac = wigner_point(FieldState{vac, small, FieldParams{}}, 0.0);
    const double w_one = wigner_point(FieldState{one, small, FieldParams{}}, 0.0);
    const bool points_ok = std::abs(w_vac - 2.0 / M_PI) <= 1e-8 &&
                           std::abs(w_one + 2.0 / M_PI) <= 1e-8;

    const TruncationPolicy policy{80, 2, 1e-8, 400};
    const FieldState coh = scts_state(5.0, 0.0, 0.0, 0.0, policy);
    const double a0 = std::sqrt(5.0);
    const WignerGridSpec spec{a0 - 3.2, a0 + 3.2, 61, -3.2, 3.2, 61};
    const WignerGrid grid = wigner(coh, spec);
    const double min_w = grid.values.minCoeff();
    const double integral = grid.integral();
    const bool grid_ok = min_w >= -1e-8 && std::abs(integral - 1.0) <= 0.01;

    // displaced parity vs characteristic-function quadrature on a 5x5 patch
    const QuadratureDisplacement dq(coh.dim(), 2 * coh.dim());
    const double beta_lim = 4.5;
    const int nq = 91;
    const double hq = 2.0 * beta_lim / (nq - 1);
    std::vector<Complex> chis(nq * nq);
    std::vector<Complex> betas(nq * nq);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nq; ++j) {
            const Complex beta(-beta_lim + hq * i, -beta_lim + hq * j);
            betas[i * nq + j] = beta;
            chis[i * nq + j] = (coh.rho.transpose().cwiseProduct(dq(beta))).sum();
        }
    double worst_quad = 0.0;
    for (int ix = 0; ix < 5; ++ix)
        for (int ip = 0; ip < 5; ++ip) {
            const Complex alpha(a0 - 1.0 + 0.5 * ix, -1.0 + 0.5 * ip);
            Complex acc = 0.0;
            for (std::size_t k = 0; k < chis.size(); ++k)
                acc += chis[k] * std::exp(std::conj(betas[k]) * alpha -
                                          betas[k] * std::conj(alpha));
            const double w_quad = (acc * hq * hq / (M_PI * M_PI)).real();
            worst_quad = std::max(worst_quad, std::abs(w_quad - wigner_point(coh, alpha)));
        }
    const bool quad_ok = worst_quad <= 1e-3;

    report(6, "Wigner checks", points_ok && grid_ok && quad_ok,
           fmt("|W_vac-2/pi| = %.1e, min W = %.1e", std::abs(w_vac - 2.0 / M_PI), min_w) +
               fmt(", integral = %.4f, quad gap = %.1e", integral, worst_quad));
}

// ---------------------------------------------------------------------------
// criterion 7: Werner concurrence law

void criterion_7() {
    double worst = 0.0;
    bool separable_ok = true;
    for (int k = 0; k <= 10; ++k) {
        const double eta = k / 10.0;
        const double c = concurrence(werner_atoms(eta).rho);
        worst = std::max(worst, std::abs(c - std::max(0.0, (3.0 * eta - 1.0) / 2.0)));
        if (eta < 1.0 / 3.0 && c != 0.0)
            separable_ok = false;
    }
    report(7, "Werner concurrence law", worst <= 1e-10 && separable_ok,
           fmt("max deviation = %.2e", worst));
}

// ---------------------------------------------------------------------------
// criterion 8: determinism

void criterion_8(const fs::path& artifacts) {
    const char* config = R"(
[model]
detuned_form = true
[truncation]
n_max = 32
tail_tol = 1e-6
[atoms]
kind = bell
[field]
nbar_c = 2.0
nbar_th = 0.5
[grid]
t_max = 4.0
samples = 101
[outputs]
channels = concurrence, negativity, inversion
esd = true
pcd = true
pcd_max_l = 12
wigner_times = 0, 2
wigner_points = 15
wigner_range = 4.0
)";
    const Scenario s = scenario_from_config(parse_config_string(config));
    const fs::path d1 = artifacts / "determinism_run1";
    const fs::path d2 = artifacts / "determinism_run2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    run_scenario(s, d1);
    run_scenario(s, d2);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    bool pass = true;
    std::string differing;
    for (const auto& entry : fs::directory_iterator(d1)) {
        const fs::path other = d2 / entry.path().filename();
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
            pass = false;
            differing = entry.path().filename().string();
        }
    }
    report(8, "determinism (byte-identical re-run)", pass,
           pass ? "all output files identical" : "differs: " + differing);
}

}  // namespace

int main() {
    const fs::path artifacts = "acceptance_artifacts";
    fs::create_directories(artifacts);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5(artifacts);
    criterion_6();
    criterion_7();
    criterion_8(artifacts);

    if (g_failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
