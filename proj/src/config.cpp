#include "pipeflow/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "format.hpp"

namespace pipeflow {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::map<std::string, Entry> tokenize(std::string_view text) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", {},
                              line_no);
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key", {}, line_no);
        }
        if (value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                                  "' has no value",
                              key, line_no);
        }
        const auto [it, inserted] = entries.emplace(key, Entry{value, line_no});
        if (!inserted) {
            throw ConfigError("duplicate key '" + key + "' on lines " +
                                  std::to_string(it->second.line) + " and " +
                                  std::to_string(line_no),
                              key, line_no);
        }
    }
    return entries;
}

// Consumes entries by key and remembers which were used.
class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const Entry* find(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        used_.insert(key);
        return &it->second;
    }

    double number(const std::string& key, double fallback) {
        const Entry* e = find(key);
        return e ? to_number(key, *e) : fallback;
    }

    double number(const std::string& key) {
        const Entry* e = find(key);
        if (!e) throw ConfigError("missing required key '" + key + "'", key);
        return to_number(key, *e);
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        const Entry* e = find(key);
        if (!e) return fallback;
        const double v = to_number(key, *e);
        if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
            throw ConfigError(where(key, *e) + ": expected a non-negative integer", key, e->line);
        }
        return static_cast<std::size_t>(v);
    }

    bool flag(const std::string& key, bool fallback) {
        const Entry* e = find(key);
        if (!e) return fallback;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        throw ConfigError(where(key, *e) + ": expected true or false", key, e->line);
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const Entry* e = find(key);
        return e ? e->value : fallback;
    }

    std::vector<double> numbers(const std::string& key) {
        const Entry* e = find(key);
        std::vector<double> out;
        if (!e) return out;
        std::string item;
        std::istringstream in(e->value);
        while (std::getline(in, item, ',')) {
            const auto v = detail::parse_number(trim(item));
            if (!v) throw ConfigError(where(key, *e) + ": expected a comma-separated list", key, e->line);
            out.push_back(*v);
        }
        return out;
    }

    int line_of(const std::string& key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    void reject_unused() const {
        const Entry* first = nullptr;
        std::string first_key;
        for (const auto& [key, entry] : entries_) {
            if (used_.count(key)) continue;
            if (!first || entry.line < first->line) {
                first = &entry;
                first_key = key;
            }
        }
        if (first) {
            throw ConfigError(where(first_key, *first) + ": unknown or inapplicable key",
                              first_key, first->line);
        }
    }

    static std::string where(const std::string& key, const Entry& e) {
        return "line " + std::to_string(e.line) + ": '" + key + "'";
    }

private:
    static double to_number(const std::string& key, const Entry& e) {
        const auto v = detail::parse_number(e.value);
        if (!v || !std::isfinite(*v)) {
            throw ConfigError(where(key, e) + ": expected a number, got '" + e.value + "'", key,
                              e.line);
        }
        return *v;
    }

    std::map<std::string, Entry> entries_;
    std::set<std::string> used_;
};

BoundaryCondition read_boundary(Reader& r, const std::string& side, double q0) {
    const std::string prefix = "boundary." + side + ".";
    const std::string kind = r.text(prefix + "kind", "");
    if (kind == "reservoir") return ReservoirHead{r.number(prefix + "head_m")};
    if (kind == "valve") {
        ClosureLaw law;
        law.q0 = q0;
        const std::string name = r.text(prefix + "law", "linear");
        try {
            law.kind = parse_closure_kind(name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(prefix + "law: " + e.what(), prefix + "law", r.line_of(prefix + "law"));
        }
        law.t_close = r.number(prefix + "close_s", 5.0);
        return PrescribedDischarge{law};
    }
    if (kind == "wall") return Wall{};
    if (kind == "periodic") return Periodic{};
    throw ConfigError(prefix + "kind: expected reservoir, valve, wall or periodic, got '" + kind +
                          "'",
                      prefix + "kind", r.line_of(prefix + "kind"));
}

void emit_boundary(std::ostringstream& out, const BoundaryCondition& bc, const std::string& side) {
    const std::string prefix = "boundary." + side + ".";
    out << prefix << "kind = " << boundary_kind(bc) << '\n';
    if (const auto* r = std::get_if<ReservoirHead>(&bc)) {
        out << prefix << "head_m = " << detail::format_number(r->head_m) << '\n';
    } else if (const auto* p = std::get_if<PrescribedDischarge>(&bc)) {
        out << prefix << "law = " << to_string(p->law.kind) << '\n';
        out << prefix << "close_s = " << detail::format_number(p->law.t_close) << '\n';
    }
}

}  // namespace

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::kinetic: return "kinetic";
        case SolverKind::moc: return "moc";
        case SolverKind::both: return "both";
    }
    return "kinetic";
}

const std::vector<std::string>& required_config_keys() {
    static const std::vector<std::string> keys = {
        "pipe.length_m", "pipe.section_m2", "boundary.upstream.kind", "boundary.downstream.kind",
        "time.end_s"};
    return keys;
}

KineticParams RunConfig::kinetic_params() const {
    KineticParams p;
    p.cfl_coefficient = cfl_coefficient;
    p.balance = balance;
    p.kernel = parse_flux_kernel(kernel);
    return p;
}

std::size_t RunConfig::moc_node_count() const {
    return moc_nodes == 0 ? scenario.mesh_cells + 1 : moc_nodes;
}

void RunConfig::validate() const {
    if (!(cfl_coefficient > 0.0 && cfl_coefficient <= 1.0)) {
        throw ConfigError("solver.cfl: must lie in (0, 1], got " +
                              detail::format_number(cfl_coefficient),
                          "solver.cfl");
    }
    try {
        (void)parse_flux_kernel(kernel);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solver.kernel: ") + e.what(), "solver.kernel");
    }
    if (kernel == "avx2" && !avx2_available()) {
        throw ConfigError("solver.kernel: avx2 is not available on this machine", "solver.kernel");
    }
    if (moc_nodes == 1) throw ConfigError("solver.moc_nodes: need at least 2 nodes", "solver.moc_nodes");
    if (output_dir.empty()) throw ConfigError("output.dir: must not be empty", "output.dir");
    try {
        scenario.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

RunConfig parse_config(std::string_view text) {
    Reader r(tokenize(text));

    std::vector<std::string> missing;
    for (const auto& key : required_config_keys()) {
        if (!r.has(key)) missing.push_back(key);
    }
    if (!missing.empty()) {
        std::string msg = "missing required keys:";
        for (const auto& k : missing) msg += " " + k;
        throw ConfigError(msg, missing.front());
    }

    RunConfig cfg;
    Scenario& sc = cfg.scenario;

    Altitude altitude;
    altitude.upstream_m = r.number("pipe.upstream_altitude_m", 0.0);
    altitude.slope_deg = r.number("pipe.slope_deg", 0.0);
    const auto table = r.numbers("pipe.altitude_table");
    if (!table.empty()) {
        if (r.has("pipe.upstream_altitude_m") || r.has("pipe.slope_deg")) {
            throw ConfigError("pipe.altitude_table: cannot be combined with a slope description",
                              "pipe.altitude_table", r.line_of("pipe.altitude_table"));
        }
        if (table.size() % 2 != 0 || table.size() < 4) {
            throw ConfigError("pipe.altitude_table: expected x1, z1, x2, z2, ...",
                              "pipe.altitude_table", r.line_of("pipe.altitude_table"));
        }
        for (std::size_t k = 0; k < table.size(); k += 2) {
            altitude.table_x.push_back(table[k]);
            altitude.table_z.push_back(table[k + 1]);
        }
    }

    const double length = r.number("pipe.length_m");
    const double section = r.number("pipe.section_m2");
    const double wall = r.number("pipe.wall_thickness_m", 0.0);
    const double young = r.number("pipe.young_modulus_pa", 0.0);
    if (!(length > 0.0)) throw ConfigError("pipe.length_m: must be positive", "pipe.length_m");
    if (!(section > 0.0)) throw ConfigError("pipe.section_m2: must be positive", "pipe.section_m2");
    try {
        sc.geometry = PipeGeometry::circular(length, section, wall, young, altitude);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("pipe: ") + e.what());
    }

    const double g = r.number("physics.gravity_ms2", 9.81);
    const double beta = r.number("physics.compressibility_pa", 5.0e-10);
    const double rho0 = r.number("physics.density_kgm3", 1000.0);
    const std::string speed = r.text("physics.wave_speed", "elastic");
    double c = 0.0;
    if (speed == "elastic") {
        sc.wave_speed_mode = WaveSpeedMode::elastic;
        if (!(wall > 0.0)) {
            throw ConfigError("pipe.wall_thickness_m: required and positive for an elastic wave speed",
                              "pipe.wall_thickness_m");
        }
        if (!(young > 0.0)) {
            throw ConfigError("pipe.young_modulus_pa: required and positive for an elastic wave speed",
                              "pipe.young_modulus_pa");
        }
    } else if (speed == "rigid") {
        sc.wave_speed_mode = WaveSpeedMode::rigid;
    } else {
        const auto v = detail::parse_number(speed);
        if (!v || !(*v > 0.0)) {
            throw ConfigError("physics.wave_speed: expected elastic, rigid or a positive number",
                              "physics.wave_speed", r.line_of("physics.wave_speed"));
        }
        sc.wave_speed_mode = WaveSpeedMode::explicit_value;
        c = *v;
    }
    try {
        c = resolve_wave_speed(sc.wave_speed_mode, sc.geometry, beta, rho0, c);
        sc.constants = PhysicalConstants::make(g, beta, rho0, c);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("physics: ") + e.what());
    }

    sc.friction.enabled = r.flag("friction.enabled", false);
    if (sc.friction.enabled) {
        sc.friction.strickler_Ks = r.number("friction.strickler");
        if (!(sc.friction.strickler_Ks > 0.0)) {
            throw ConfigError("friction.strickler: must be positive", "friction.strickler");
        }
    }

    sc.mesh_cells = r.count("mesh.cells", 1000);
    sc.initial_discharge_Q0 = r.number("flow.initial_discharge_m3s", 0.0);
    sc.upstream = read_boundary(r, "upstream", sc.initial_discharge_Q0);
    sc.downstream = read_boundary(r, "downstream", sc.initial_discharge_Q0);
    sc.t_end = r.number("time.end_s");
    sc.output_stride = r.count("output.stride", 0);
    sc.probes = r.numbers("output.probes_m");
    if (sc.probes.empty()) sc.probes = {0.5 * length};
    cfg.output_dir = r.text("output.dir", "out");

    const std::string solver = r.text("solver.kind", "kinetic");
    if (solver == "kinetic") cfg.solver = SolverKind::kinetic;
    else if (solver == "moc") cfg.solver = SolverKind::moc;
    else if (solver == "both") cfg.solver = SolverKind::both;
    else {
        throw ConfigError("solver.kind: expected kinetic, moc or both", "solver.kind",
                          r.line_of("solver.kind"));
    }
    cfg.cfl_coefficient = r.number("solver.cfl", 0.8);
    const std::string balance = r.text("solver.balance", "corrected");
    try {
        cfg.balance = parse_balance(balance);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("solver.balance: ") + e.what(), "solver.balance",
                          r.line_of("solver.balance"));
    }
    cfg.kernel = r.text("solver.kernel", "auto");
    cfg.moc_nodes = r.count("solver.moc_nodes", 0);

    r.reject_unused();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const RunConfig& config) {
    using detail::format_number;
    const Scenario& sc = config.scenario;
    const auto& geo = sc.geometry;
    std::ostringstream out;
    out << "pipe.length_m = " << format_number(geo.length_L) << '\n';
    out << "pipe.section_m2 = " << format_number(geo.section_S) << '\n';
    out << "pipe.wall_thickness_m = " << format_number(geo.wall_e) << '\n';
    out << "pipe.young_modulus_pa = " << format_number(geo.young_E) << '\n';
    if (geo.altitude.tabulated()) {
        out << "pipe.altitude_table = ";
        for (std::size_t k = 0; k < geo.altitude.table_x.size(); ++k) {
            if (k) out << ", ";
            out << format_number(geo.altitude.table_x[k]) << ", "
                << format_number(geo.altitude.table_z[k]);
        }
        out << '\n';
    } else {
        out << "pipe.upstream_altitude_m = " << format_number(geo.altitude.upstream_m) << '\n';
        out << "pipe.slope_deg = " << format_number(geo.altitude.slope_deg) << '\n';
    }
    out << "physics.gravity_ms2 = " << format_number(sc.constants.g) << '\n';
    out << "physics.compressibility_pa = " << format_number(sc.constants.beta) << '\n';
    out << "physics.density_kgm3 = " << format_number(sc.constants.rho0) << '\n';
    out << "physics.wave_speed = ";
    switch (sc.wave_speed_mode) {
        case WaveSpeedMode::elastic: out << "elastic"; break;
        case WaveSpeedMode::rigid: out << "rigid"; break;
        case WaveSpeedMode::explicit_value: out << format_number(sc.constants.c); break;
    }
    out << '\n';
    out << "friction.enabled = " << (sc.friction.enabled ? "true" : "false") << '\n';
    if (sc.friction.enabled) {
        out << "friction.strickler = " << format_number(sc.friction.strickler_Ks) << '\n';
    }
    out << "mesh.cells = " << sc.mesh_cells << '\n';
    out << "flow.initial_discharge_m3s = " << format_number(sc.initial_discharge_Q0) << '\n';
    emit_boundary(out, sc.upstream, "upstream");
    emit_boundary(out, sc.downstream, "downstream");
    out << "time.end_s = " << format_number(sc.t_end) << '\n';
    out << "output.stride = " << sc.output_stride << '\n';
    out << "output.probes_m = ";
    for (std::size_t k = 0; k < sc.probes.size(); ++k) {
        if (k) out << ", ";
        out << format_number(sc.probes[k]);
    }
    out << '\n';
    out << "output.dir = " << config.output_dir << '\n';
    out << "solver.kind = " << to_string(config.solver) << '\n';
    out << "solver.cfl = " << format_number(config.cfl_coefficient) << '\n';
    out << "solver.balance = " << to_string(config.balance) << '\n';
    out << "solver.kernel = " << config.kernel << '\n';
    out << "solver.moc_nodes = " << config.moc_nodes << '\n';
    return out.str();
}

}  // namespace pipeflow
