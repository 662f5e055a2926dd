#pragma once

#include "jcsim/fock.hpp"
#include "jcsim/types.hpp"

namespace jcsim {

/// Mean photon numbers and phases defining a squeezed coherent thermal field:
/// rho = D(alpha) S(zeta) rho_th S^dag(zeta) D^dag(alpha) with
/// alpha = sqrt(nbar_c) e^{i alpha_phase} and zeta = arcsinh(sqrt(nbar_s)) e^{i phi}.
struct FieldParams {
    double nbar_c = 0.0;
    double nbar_s = 0.0;
    double nbar_th = 0.0;
    double phi = 0.0;
    double alpha_phase = 0.0;

    Complex alpha() const;
    double squeeze_r() const;
    Complex zeta() const;
    void validate() const;
};

/// Field-mode density matrix on a truncated Fock space. policy.n_max reflects
/// the escalated truncation actually used (rho is n_max x n_max).
struct FieldState {
    Matrix rho;
    TruncationPolicy policy;
    FieldParams params;

    Index dim() const { return rho.rows(); }
};

/// Two-qubit density matrix in the basis order (|ee>, |eg>, |ge>, |gg>).
struct AtomPairState {
    enum class Kind { bell, werner };

    Matrix4 rho;
    Kind kind;
    double param;  // theta for bell, eta for werner
};

/// Composite density matrix on atom-A (x) atom-B (x) field.
struct SystemState {
    Matrix rho;
    double time = 0.0;  // dimensionless lambda*t

    Index field_dim() const { return rho.rows() / 4; }
    std::vector<Index> factor_dims() const { return {2, 2, field_dim()}; }
};

/// Thermal field state, diagonal geometric distribution renormalized over the
/// retained block. Escalates n_max until the tail criterion holds.
FieldState thermal_state(double nbar_th, const TruncationPolicy& policy);

/// Squeezed coherent thermal state, built on the padded workspace and cropped
/// (not renormalized; trace is within tail_tol of 1). Escalates n_max until
/// the tail criterion holds.
FieldState scts_state(double nbar_c, double nbar_s, double nbar_th, double phi,
                      const TruncationPolicy& policy, double alpha_phase = 0.0);

/// Reading of the Hermite-polynomial argument in the analytic photon-count
/// distribution; the source text is ambiguous and the tilded reading is the
/// one that matches the matrix-built state.
enum class HermiteArg { tilded, untilded };

/// Analytic photon-count distribution P(l) of the squeezed coherent thermal
/// state, evaluated in log space (stable for l in the hundreds).
double pcd_analytic(int l, double nbar_c, double nbar_s, double nbar_th, double phi,
                    double alpha_phase = 0.0, HermiteArg arg = HermiteArg::tilded);

/// Physicists' Hermite polynomial H_q at a complex argument, by the
/// three-term recurrence.
Complex hermite(int q, Complex x);

/// Pure two-qubit state cos(theta)|eg> + sin(theta)|ge>.
AtomPairState bell_atoms(double theta);

/// Werner mixture (1-eta) I/4 + eta |psi-><psi-| with
/// |psi-> = (|ge> - |eg>)/sqrt(2). Entangled iff eta > 1/3.
AtomPairState werner_atoms(double eta);

/// Product state rho_AB (x) rho_F on the composite space.
SystemState compose_initial(const AtomPairState& atoms, const FieldState& field);

}  // namespace jcsim
