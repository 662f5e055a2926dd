#pragma once

#include "jcsim/evolve.hpp"
#include "jcsim/hamiltonian.hpp"
#include "jcsim/measures.hpp"
#include "jcsim/states.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jcsim {

/// Raw parsed config: (section.key, value) pairs in file order.
using ConfigMap = std::vector<std::pair<std::string, std::string>>;

ConfigMap parse_config_file(const std::filesystem::path& path);
ConfigMap parse_config_string(const std::string& text);

/// Applies "section.key=value"; replaces an existing entry or appends.
void apply_override(ConfigMap& config, const std::string& key_value);

enum class NegativityCut { atoms_vs_field, atomA_vs_rest, both };

struct AtomsSpec {
    AtomPairState::Kind kind = AtomPairState::Kind::bell;
    double theta = 0.0;
    double eta = 0.0;

    AtomPairState make() const;
};

struct OutputSpec {
    bool concurrence = false;
    bool negativity = false;
    bool inversion = false;
    NegativityCut cut = NegativityCut::atoms_vs_field;
    bool esd = false;
    double esd_threshold = 1e-6;
    bool pcd = false;
    int pcd_max_l = 40;
    std::vector<double> wigner_times;
    double wigner_range = 5.0;
    int wigner_points = 61;

    bool empty() const {
        return !concurrence && !negativity && !inversion && !esd && !pcd &&
               wigner_times.empty();
    }
};

struct SweepSpec {
    std::string parameter;
    std::vector<double> values;
};

/// A fully validated run description. model.policy.n_max is the requested
/// truncation; the resolved (possibly escalated) value appears in the
/// manifest after the field state is built.
struct Scenario {
    ModelSpec model;
    std::optional<double> delta;  // when set, omega = nu + delta
    AtomsSpec atoms;
    FieldParams field;
    double t_max = 10.0;
    int samples = 2001;
    OutputSpec outputs;
    std::optional<SweepSpec> sweep;

    /// Model parameters with the delta override folded in.
    ModelSpec resolved_model() const;
};

/// Interprets and validates a parsed config. Unknown sections or keys, bad
/// values, and inconsistent (omega, nu, delta) raise ParseError.
Scenario scenario_from_config(const ConfigMap& config);

/// Scenario with the named scalar replaced (sweep application).
Scenario with_parameter(const Scenario& scenario, const std::string& parameter, double value);

/// True when the name is accepted by with_parameter.
bool is_sweepable(const std::string& parameter);

/// Executes one scenario: writes manifest.cfg plus the selected outputs
/// (series.csv, esd.csv, pcd.csv, wigner_*.csv/.meta) into out_dir.
/// Deterministic: identical inputs produce byte-identical files.
void run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

/// Executes the scenario's sweep: one subdirectory per value plus a combined
/// long-format CSV. Points may run on up to `threads` workers; the combined
/// file is assembled in value order after all points complete.
void run_sweep(const Scenario& scenario, const std::filesystem::path& out_dir,
               int threads = 1);

}  // namespace jcsim
