#include "jcsim/scenario.hpp"

#include "jcsim/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace jcsim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid integer for " + key + ": '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true")
        return true;
    if (value == "false")
        return false;
    throw ParseError("invalid boolean for " + key + ": '" + value + "' (use true/false)");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

/// Consumes entries from a parsed config, tracking unknown keys.
class ConfigReader {
  public:
    explicit ConfigReader(const ConfigMap& config) {
        for (const auto& [key, value] : config) {
            if (std::any_of(entries_.begin(), entries_.end(),
                            [&](const auto& e) { return e.key == key; }))
                throw ParseError("duplicate key: " + key);
            entries_.push_back({key, value, false});
        }
    }

    std::optional<std::string> take(const std::string& key) {
        for (auto& e : entries_)
            if (e.key == key) {
                e.used = true;
                return e.value;
            }
        return std::nullopt;
    }

    double number(const std::string& key, double fallback) {
        const auto v = take(key);
        return v ? parse_double(key, *v) : fallback;
    }

    int integer(const std::string& key, int fallback) {
        const auto v = take(key);
        return v ? parse_int(key, *v) : fallback;
    }

    bool boolean(const std::string& key, bool fallback) {
        const auto v = take(key);
        return v ? parse_bool(key, *v) : fallback;
    }

    void finish() const {
        for (const auto& e : entries_)
            if (!e.used)
                throw ParseError("unknown key: " + e.key);
    }

  private:
    struct Entry {
        std::string key, value;
        bool used;
    };
    std::vector<Entry> entries_;
};

ConfigMap parse_config_lines(std::istream& in, const std::string& origin) {
    ConfigMap config;
    std::string section, line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ParseError(origin + ":" + std::to_string(lineno) +
                                 ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": key outside any [section]");
        const std::string full = section + "." + key;
        for (const auto& [k, v] : config)
            if (k == full)
                throw ParseError(origin + ":" + std::to_string(lineno) +
                                 ": duplicate key " + full);
        config.emplace_back(full, value);
    }
    return config;
}

}  // namespace

ConfigMap parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read config file: " + path.string());
    return parse_config_lines(in, path.filename().string());
}

ConfigMap parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config_lines(in, "<string>");
}

void apply_override(ConfigMap& config, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw ParseError("override must be section.key=value: '" + key_value + "'");
    const std::string key = trim(key_value.substr(0, eq));
    const std::string value = trim(key_value.substr(eq + 1));
    if (key.find('.') == std::string::npos)
        throw ParseError("override key must be section.key: '" + key + "'");
    for (auto& [k, v] : config)
        if (k == key) {
            v = value;
            return;
        }
    config.emplace_back(key, value);
}

AtomPairState AtomsSpec::make() const {
    return kind == AtomPairState::Kind::bell ? bell_atoms(theta) : werner_atoms(eta);
}

ModelSpec Scenario::resolved_model() const {
    ModelSpec m = model;
    if (delta)
        m.omega = m.nu + *delta;
    return m;
}

Scenario scenario_from_config(const ConfigMap& config) {
    ConfigReader r(config);
    Scenario s;

    s.model.lambda = r.number("model.lambda", 1.0);
    const auto omega = r.take("model.omega");
    const auto nu = r.take("model.nu");
    const auto delta = r.take("model.delta");
    if (nu)
        s.model.nu = parse_double("model.nu", *nu);
    if (omega)
        s.model.omega = parse_double("model.omega", *omega);
    if (delta) {
        s.delta = parse_double("model.delta", *delta);
        if (omega && std::abs(s.model.omega - s.model.nu - *s.delta) > 1e-12)
            throw ParseError("model.delta is inconsistent with model.omega - model.nu");
    }
    s.model.jz = r.number("model.jz", 0.0);
    s.model.gd = r.number("model.gd", 0.0);
    s.model.kerr_k = r.number("model.kerr_k", 0.0);
    s.model.detuned_form = r.boolean("model.detuned_form", false);

    s.model.policy.n_max = r.integer("truncation.n_max", 80);
    s.model.policy.pad_factor = r.integer("truncation.pad_factor", 2);
    s.model.policy.tail_tol = r.number("truncation.tail_tol", 1e-8);
    s.model.policy.n_max_limit =
        r.integer("truncation.n_max_limit", std::max(400, s.model.policy.n_max));

    const auto kind = r.take("atoms.kind");
    if (!kind)
        throw ParseError("atoms.kind is required (bell or werner)");
    if (*kind == "bell") {
        s.atoms.kind = AtomPairState::Kind::bell;
        s.atoms.theta = r.number("atoms.theta", M_PI / 4.0);
    } else if (*kind == "werner") {
        s.atoms.kind = AtomPairState::Kind::werner;
        s.atoms.eta = r.number("atoms.eta", 0.5);
    } else {
        throw ParseError("atoms.kind must be 'bell' or 'werner', got '" + *kind + "'");
    }

    s.field.nbar_c = r.number("field.nbar_c", 0.0);
    s.field.nbar_s = r.number("field.nbar_s", 0.0);
    s.field.nbar_th = r.number("field.nbar_th", 0.0);
    s.field.phi = r.number("field.phi", 0.0);
    s.field.alpha_phase = r.number("field.alpha_phase", 0.0);

    s.t_max = r.number("grid.t_max", 10.0);
    s.samples = r.integer("grid.samples", 2001);

    if (const auto channels = r.take("outputs.channels")) {
        for (const auto& c : split_list(*channels)) {
            if (c == "concurrence")
                s.outputs.concurrence = true;
            else if (c == "negativity")
                s.outputs.negativity = true;
            else if (c == "inversion")
                s.outputs.inversion = true;
            else
                throw ParseError("unknown output channel: '" + c + "'");
        }
    }
    if (const auto cut = r.take("outputs.negativity_cut")) {
        if (*cut == "atoms_vs_field")
            s.outputs.cut = NegativityCut::atoms_vs_field;
        else if (*cut == "atomA_vs_rest")
            s.outputs.cut = NegativityCut::atomA_vs_rest;
        else if (*cut == "both")
            s.outputs.cut = NegativityCut::both;
        else
            throw ParseError("unknown negativity cut: '" + *cut + "'");
    }
    s.outputs.esd = r.boolean("outputs.esd", false);
    s.outputs.esd_threshold = r.number("outputs.esd_threshold", 1e-6);
    s.outputs.pcd = r.boolean("outputs.pcd", false);
    s.outputs.pcd_max_l = r.integer("outputs.pcd_max_l", 40);
    if (const auto wt = r.take("outputs.wigner_times")) {
        for (const auto& v : split_list(*wt))
            s.outputs.wigner_times.push_back(parse_double("outputs.wigner_times", v));
    }
    s.outputs.wigner_range = r.number("outputs.wigner_range", 5.0);
    s.outputs.wigner_points = r.integer("outputs.wigner_points", 61);

    if (const auto param = r.take("sweep.parameter")) {
        SweepSpec sweep;
        sweep.parameter = *param;
        if (!is_sweepable(sweep.parameter))
            throw ParseError("sweep.parameter is not a sweepable scalar: '" +
                             sweep.parameter + "'");
        const auto values = r.take("sweep.values");
        if (!values)
            throw ParseError("sweep.values is required when sweep.parameter is set");
        for (const auto& v : split_list(*values))
            sweep.values.push_back(parse_double("sweep.values", v));
        if (sweep.values.empty())
            throw ParseError("sweep.values must be a nonempty list");
        s.sweep = std::move(sweep);
    }
    r.finish();

    // Validate the materialized physics parameters up front so malformed
    // configs fail before any file is written.
    try {
        if (!(s.model.lambda > 0.0))
            throw std::invalid_argument("model.lambda must be > 0 (it sets the time unit)");
        s.resolved_model().validate();
        s.field.validate();
        if (s.atoms.kind == AtomPairState::Kind::werner)
            (void)werner_atoms(s.atoms.eta);
        TimeGrid::uniform(s.t_max, s.samples);
        if (s.outputs.esd_threshold <= 0.0)
            throw std::invalid_argument("outputs.esd_threshold must be > 0");
        if (s.outputs.pcd && s.outputs.pcd_max_l < 0)
            throw std::invalid_argument("outputs.pcd_max_l must be >= 0");
        if (!s.outputs.wigner_times.empty()) {
            if (s.outputs.wigner_range <= 0.0)
                throw std::invalid_argument("outputs.wigner_range must be > 0");
            if (s.outputs.wigner_points < 2)
                throw std::invalid_argument("outputs.wigner_points must be >= 2");
            for (double t : s.outputs.wigner_times)
                if (t < 0.0 || t > s.t_max)
                    throw std::invalid_argument("outputs.wigner_times must lie in [0, t_max]");
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid parameter: ") + e.what());
    }
    return s;
}

bool is_sweepable(const std::string& parameter) {
    static const char* names[] = {
        "model.lambda",  "model.omega",  "model.nu",      "model.delta",
        "model.jz",      "model.gd",     "model.kerr_k",  "field.nbar_c",
        "field.nbar_s",  "field.nbar_th", "field.phi",    "field.alpha_phase",
        "atoms.theta",   "atoms.eta",    "grid.t_max",    "truncation.tail_tol",
    };
    return std::any_of(std::begin(names), std::end(names),
                       [&](const char* n) { return parameter == n; });
}

Scenario with_parameter(const Scenario& scenario, const std::string& parameter, double value) {
    Scenario s = scenario;
    if (parameter == "model.lambda")
        s.model.lambda = value;
    else if (parameter == "model.omega")
        s.model.omega = value;
    else if (parameter == "model.nu")
        s.model.nu = value;
    else if (parameter == "model.delta")
        s.delta = value;
    else if (parameter == "model.jz")
        s.model.jz = value;
    else if (parameter == "model.gd")
        s.model.gd = value;
    else if (parameter == "model.kerr_k")
        s.model.kerr_k = value;
    else if (parameter == "field.nbar_c")
        s.field.nbar_c = value;
    else if (parameter == "field.nbar_s")
        s.field.nbar_s = value;
    else if (parameter == "field.nbar_th")
        s.field.nbar_th = value;
    else if (parameter == "field.phi")
        s.field.phi = value;
    else if (parameter == "field.alpha_phase")
        s.field.alpha_phase = value;
    else if (parameter == "atoms.theta")
        s.atoms.theta = value;
    else if (parameter == "atoms.eta")
        s.atoms.eta = value;
    else if (parameter == "grid.t_max")
        s.t_max = value;
    else if (parameter == "truncation.tail_tol")
        s.model.policy.tail_tol = value;
    else
        throw std::invalid_argument("not a sweepable parameter: " + parameter);
    return s;
}

namespace {

std::vector<std::string> channel_names(const OutputSpec& out) {
    std::vector<std::string> names;
    if (out.concurrence)
        names.push_back("concurrence");
    if (out.negativity) {
        if (out.cut == NegativityCut::atoms_vs_field || out.cut == NegativityCut::both)
            names.push_back("negativity_atoms_vs_field");
        if (out.cut == NegativityCut::atomA_vs_rest || out.cut == NegativityCut::both)
            names.push_back("negativity_atomA_vs_rest");
    }
    if (out.inversion) {
        names.push_back("inversion_A");
        names.push_back("inversion_B");
    }
    return names;
}

double inversion_from_pair(const Matrix4& rho_ab, Atom atom) {
    double v = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const int bit = atom == Atom::A ? a : b;
            v += (bit == 0 ? 1.0 : -1.0) * rho_ab(2 * a + b, 2 * a + b).real();
        }
    return v;
}

struct SeriesData {
    std::vector<std::string> channels;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;  // rows[k][c]
};

SeriesData compute_series(const Scenario& scenario, const Propagator& prop,
                          const TimeGrid& grid) {
    SeriesData data;
    data.channels = channel_names(scenario.outputs);
    data.times = grid.samples;
    data.rows.reserve(grid.samples.size());
    const bool need_full =
        scenario.outputs.negativity;  // negativity needs the composite state
    for (double t : grid.samples) {
        std::vector<double> row;
        row.reserve(data.channels.size());
        Matrix4 pair;
        if (scenario.outputs.concurrence || scenario.outputs.inversion)
            pair = prop.atoms_at(t);
        SystemState full{Matrix(), t};
        if (need_full)
            full = prop.state_at(t);
        if (scenario.outputs.concurrence)
            row.push_back(concurrence(pair));
        if (scenario.outputs.negativity) {
            if (scenario.outputs.cut == NegativityCut::atoms_vs_field ||
                scenario.outputs.cut == NegativityCut::both)
                row.push_back(negativity(full, Cut::atoms_vs_field));
            if (scenario.outputs.cut == NegativityCut::atomA_vs_rest ||
                scenario.outputs.cut == NegativityCut::both)
                row.push_back(negativity(full, Cut::atomA_vs_rest));
        }
        if (scenario.outputs.inversion) {
            row.push_back(inversion_from_pair(pair, Atom::A));
            row.push_back(inversion_from_pair(pair, Atom::B));
        }
        data.rows.push_back(std::move(row));
    }
    return data;
}

void write_series_csv(const SeriesData& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "lambda_t";
    for (const auto& c : data.channels)
        out << "," << c;
    out << "\n";
    for (std::size_t k = 0; k < data.times.size(); ++k) {
        out << fmt(data.times[k]);
        for (double v : data.rows[k])
            out << "," << fmt(v);
        out << "\n";
    }
}

void write_esd_csv(const SeriesData& data, const OutputSpec& outputs,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "channel,t_start,t_end\n";
    for (std::size_t c = 0; c < data.channels.size(); ++c) {
        const auto& name = data.channels[c];
        if (name.rfind("inversion", 0) == 0)
            continue;  // ESD applies to the entanglement channels
        std::vector<double> values(data.times.size());
        for (std::size_t k = 0; k < data.times.size(); ++k)
            values[k] = data.rows[k][c];
        const EsdReport report = detect_esd(data.times, values, outputs.esd_threshold);
        for (const auto& [a, b] : report.intervals)
            out << name << "," << fmt(a) << "," << fmt(b) << "\n";
    }
}

void write_pcd_csv(const FieldState& field, const OutputSpec& outputs,
                   const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "l,p_analytic,p_matrix\n";
    const int l_max = std::min<int>(outputs.pcd_max_l, static_cast<int>(field.dim()) - 1);
    for (int l = 0; l <= l_max; ++l) {
        const double analytic =
            pcd_analytic(l, field.params.nbar_c, field.params.nbar_s, field.params.nbar_th,
                         field.params.phi, field.params.alpha_phase);
        out << l << "," << fmt(analytic) << "," << fmt(field.rho(l, l).real()) << "\n";
    }
}

void write_wigner_files(const Scenario& scenario, const Propagator& prop,
                        const FieldState& field, const std::filesystem::path& out_dir) {
    const double r = scenario.outputs.wigner_range;
    const WignerGridSpec spec{-r, r, scenario.outputs.wigner_points,
                              -r, r, scenario.outputs.wigner_points};
    for (std::size_t i = 0; i < scenario.outputs.wigner_times.size(); ++i) {
        const double t = scenario.outputs.wigner_times[i];
        const SystemState state = prop.state_at(t);
        FieldState snapshot{
            partial_trace(state.rho, state.factor_dims(), {2}), field.policy, field.params};
        const WignerGrid grid = wigner(snapshot, spec);

        char stem[32];
        std::snprintf(stem, sizeof stem, "wigner_%02zu", i);
        std::ofstream csv(out_dir / (std::string(stem) + ".csv"));
        csv << "x,p,w\n";
        for (int ix = 0; ix < spec.nx; ++ix)
            for (int ip = 0; ip < spec.np; ++ip)
                csv << fmt(grid.xs[ix]) << "," << fmt(grid.ps[ip]) << ","
                    << fmt(grid.values(ix, ip)) << "\n";
        std::ofstream meta(out_dir / (std::string(stem) + ".meta"));
        meta << "lambda_t = " << fmt(t) << "\n"
             << "x_min = " << fmt(spec.x_min) << "\nx_max = " << fmt(spec.x_max)
             << "\nnx = " << spec.nx << "\n"
             << "p_min = " << fmt(spec.p_min) << "\np_max = " << fmt(spec.p_max)
             << "\nnp = " << spec.np << "\n"
             << "integral = " << fmt(grid.integral()) << "\n";
    }
}

void write_manifest(const Scenario& scenario, const ModelSpec& resolved,
                    const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "# resolved scenario parameters; re-runnable as a config\n";
    if (resolved.kerr_k != 0.0)
        out << "# chi/lambda = " << fmt_short(resolved.chi() / resolved.lambda) << "\n";
    out << "[model]\n";
    out << "lambda = " << fmt(resolved.lambda) << "\n";
    out << "omega = " << fmt(resolved.omega) << "\n";
    out << "nu = " << fmt(resolved.nu) << "\n";
    out << "jz = " << fmt(resolved.jz) << "\n";
    out << "gd = " << fmt(resolved.gd) << "\n";
    out << "kerr_k = " << fmt(resolved.kerr_k) << "\n";
    out << "detuned_form = " << (resolved.detuned_form ? "true" : "false") << "\n";
    out << "\n[truncation]\n";
    out << "n_max = " << resolved.policy.n_max << "\n";
    out << "pad_factor = " << resolved.policy.pad_factor << "\n";
    out << "tail_tol = " << fmt(resolved.policy.tail_tol) << "\n";
    out << "n_max_limit = " << resolved.policy.n_max_limit << "\n";
    out << "\n[atoms]\n";
    if (scenario.atoms.kind == AtomPairState::Kind::bell) {
        out << "kind = bell\ntheta = " << fmt(scenario.atoms.theta) << "\n";
    } else {
        out << "kind = werner\neta = " << fmt(scenario.atoms.eta) << "\n";
    }
    out << "\n[field]\n";
    out << "nbar_c = " << fmt(scenario.field.nbar_c) << "\n";
    out << "nbar_s = " << fmt(scenario.field.nbar_s) << "\n";
    out << "nbar_th = " << fmt(scenario.field.nbar_th) << "\n";
    out << "phi = " << fmt(scenario.field.phi) << "\n";
    out << "alpha_phase = " << fmt(scenario.field.alpha_phase) << "\n";
    out << "\n[grid]\n";
    out << "t_max = " << fmt(scenario.t_max) << "\n";
    out << "samples = " << scenario.samples << "\n";
    out << "\n[outputs]\n";
    std::vector<std::string> ch;
    if (scenario.outputs.concurrence)
        ch.push_back("concurrence");
    if (scenario.outputs.negativity)
        ch.push_back("negativity");
    if (scenario.outputs.inversion)
        ch.push_back("inversion");
    if (!ch.empty()) {
        out << "channels = ";
        for (std::size_t i = 0; i < ch.size(); ++i)
            out << (i ? ", " : "") << ch[i];
        out << "\n";
    }
    const char* cut = scenario.outputs.cut == NegativityCut::atoms_vs_field ? "atoms_vs_field"
                      : scenario.outputs.cut == NegativityCut::atomA_vs_rest ? "atomA_vs_rest"
                                                                             : "both";
    out << "negativity_cut = " << cut << "\n";
    out << "esd = " << (scenario.outputs.esd ? "true" : "false") << "\n";
    out << "esd_threshold = " << fmt(scenario.outputs.esd_threshold) << "\n";
    out << "pcd = " << (scenario.outputs.pcd ? "true" : "false") << "\n";
    out << "pcd_max_l = " << scenario.outputs.pcd_max_l << "\n";
    if (!scenario.outputs.wigner_times.empty()) {
        out << "wigner_times = ";
        for (std::size_t i = 0; i < scenario.outputs.wigner_times.size(); ++i)
            out << (i ? ", " : "") << fmt(scenario.outputs.wigner_times[i]);
        out << "\n";
    }
    out << "wigner_range = " << fmt(scenario.outputs.wigner_range) << "\n";
    out << "wigner_points = " << scenario.outputs.wigner_points << "\n";
}

SeriesData run_single(const Scenario& scenario, const std::filesystem::path& out_dir) {
    ModelSpec model = scenario.resolved_model();
    model.validate();
    scenario.field.validate();

    const FieldState field =
        scts_state(scenario.field.nbar_c, scenario.field.nbar_s, scenario.field.nbar_th,
                   scenario.field.phi, model.policy, scenario.field.alpha_phase);
    model.policy = field.policy;  // escalated truncation is authoritative

    std::filesystem::create_directories(out_dir);
    write_manifest(scenario, model, out_dir / "manifest.cfg");

    SeriesData data;
    if (scenario.outputs.empty())
        return data;

    if (scenario.outputs.pcd)
        write_pcd_csv(field, scenario.outputs, out_dir / "pcd.csv");

    const bool need_dynamics = scenario.outputs.concurrence || scenario.outputs.negativity ||
                               scenario.outputs.inversion ||
                               !scenario.outputs.wigner_times.empty();
    if (!need_dynamics)
        return data;

    const AtomPairState atoms = scenario.atoms.make();
    const SystemState initial = compose_initial(atoms, field);
    const Matrix h = model.detuned_form ? build_detuned(model) : build(model);
    const TimeGrid grid = TimeGrid::uniform(scenario.t_max, scenario.samples);
    const Propagator prop(h, initial);

    if (!channel_names(scenario.outputs).empty()) {
        data = compute_series(scenario, prop, grid);
        write_series_csv(data, out_dir / "series.csv");
        if (scenario.outputs.esd)
            write_esd_csv(data, scenario.outputs, out_dir / "esd.csv");
    }
    if (!scenario.outputs.wigner_times.empty())
        write_wigner_files(scenario, prop, field, out_dir);
    return data;
}

}  // namespace

void run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
    run_single(scenario, out_dir);
}

void run_sweep(const Scenario& scenario, const std::filesystem::path& out_dir, int threads) {
    if (!scenario.sweep)
        throw std::invalid_argument("run_sweep: scenario has no sweep section");
    const SweepSpec& sweep = *scenario.sweep;
    if (threads < 1)
        throw std::invalid_argument("run_sweep: threads must be >= 1");

    // Validate all points before writing anything.
    std::vector<Scenario> points;
    points.reserve(sweep.values.size());
    for (double v : sweep.values) {
        Scenario p = with_parameter(scenario, sweep.parameter, v);
        p.sweep.reset();
        try {
            p.resolved_model().validate();
            p.field.validate();
        } catch (const std::invalid_argument& e) {
            throw ParseError("sweep value " + fmt_short(v) + ": " + e.what());
        }
        points.push_back(std::move(p));
    }

    std::filesystem::create_directories(out_dir);
    std::vector<SeriesData> results(points.size());
    std::vector<std::filesystem::path> dirs(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        dirs[i] = out_dir / (sweep.parameter + "=" + fmt_short(sweep.values[i]));

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::size_t next = 0;
    std::mutex next_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lock(next_mutex);
                if (next >= points.size() || failure)
                    return;
                i = next++;
            }
            try {
                results[i] = run_single(points[i], dirs[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                return;
            }
        }
    };
    const int n_workers = std::min<int>(threads, static_cast<int>(points.size()));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    // Combined long-format CSV, assembled in value order.
    std::ofstream combined(out_dir / "combined.csv");
    combined << sweep.parameter << ",lambda_t";
    const std::vector<std::string> channels = channel_names(scenario.outputs);
    for (const auto& c : channels)
        combined << "," << c;
    combined << "\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const SeriesData& d = results[i];
        for (std::size_t k = 0; k < d.times.size(); ++k) {
            combined << fmt(sweep.values[i]) << "," << fmt(d.times[k]);
            for (double v : d.rows[k])
                combined << "," << fmt(v);
            combined << "\n";
        }
    }
}

}  // namespace jcsim
