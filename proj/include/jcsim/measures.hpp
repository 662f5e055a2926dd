#pragma once

#include "jcsim/states.hpp"
#include "jcsim/types.hpp"

#include <utility>
#include <vector>

namespace jcsim {

/// Bipartition for the negativity of the composite state.
enum class Cut { atoms_vs_field, atomA_vs_rest };

enum class Atom { A, B };

/// Wootters concurrence of a two-qubit density matrix: max{0, L1-L2-L3-L4}
/// with L_i the decreasingly ordered square roots of the eigenvalues of
/// rho (sy x sy) rho* (sy x sy), conjugation taken in the computational basis.
/// Throws std::invalid_argument for inputs that are not density matrices
/// within tolerance.
double concurrence(const Matrix& rho_ab);

/// Sum of |xi| - xi over 2 of the partial-transpose eigenvalues, for the
/// chosen bipartition of A (x) B (x) field.
double negativity(const SystemState& state, Cut cut = Cut::atoms_vs_field);

/// Negativity across an arbitrary factor split.
double negativity_general(const Matrix& rho, const std::vector<Index>& dims,
                          const std::vector<int>& transposed);

/// Phase-space grid for the Wigner distribution, alpha = x + i p.
struct WignerGridSpec {
    double x_min, x_max;
    int nx;
    double p_min, p_max;
    int np;

    void validate() const;
};

struct WignerGrid {
    WignerGridSpec spec;
    std::vector<double> xs, ps;
    RealMatrix values;  // values(ix, ip) = W(xs[ix] + i ps[ip])

    /// Riemann sum W * dx * dp; 1 within ~1e-2 when the grid encloses the
    /// state's support.
    double integral() const;
};

/// W(alpha) = (2/pi) Tr[rho D(alpha) Pi D^dag(alpha)] evaluated pointwise on
/// the grid (displaced-parity form; integrates to 1 under d^2alpha = dx dp).
/// Warns when the grid reaches displacements beyond the truncation's comfort.
WignerGrid wigner(const FieldState& field, const WignerGridSpec& spec);

/// Single displaced-parity evaluation.
double wigner_point(const FieldState& field, Complex alpha);

/// Tr[rho sigma_z^atom].
double atomic_inversion(const SystemState& state, Atom atom);

/// Maximal sub-threshold windows of an entanglement time series.
struct EsdReport {
    std::vector<std::pair<double, double>> intervals;  // (t_start, t_end)
    double threshold;
};

/// Scans a sampled channel for intervals where value < threshold; intervals
/// shorter than 2 samples are discarded. Times must be strictly increasing.
EsdReport detect_esd(const std::vector<double>& times, const std::vector<double>& values,
                     double threshold = 1e-6);

}  // namespace jcsim
