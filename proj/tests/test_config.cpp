#include <doctest.h>

#include <fstream>
#include <string>

#include "helpers.hpp"
#include "pipeflow/config.hpp"

using namespace pipeflow;
using testing_support::Rng;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const std::string kMinimal =
    "pipe.length_m = 100\n"
    "pipe.section_m2 = 1\n"
    "pipe.wall_thickness_m = 0.1\n"
    "pipe.young_modulus_pa = 2e10\n"
    "boundary.upstream.kind = wall\n"
    "boundary.downstream.kind = wall\n"
    "time.end_s = 1\n";

ConfigError error_of(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected a ConfigError");
    return ConfigError("");
}

}  // namespace

TEST_CASE("the water hammer config parses to the validation setup") {
    const RunConfig cfg = load_config(std::string(PIPEFLOW_SOURCE_DIR) + "/configs/waterhammer.cfg");
    const Scenario& sc = cfg.scenario;
    CHECK(sc.geometry.length_L == 2000.0);
    CHECK(sc.geometry.section_S == 2.0);
    CHECK(sc.geometry.altitude.at(0.0) == 250.0);
    CHECK(sc.geometry.altitude.at(2000.0) == doctest::Approx(250.0 - 2000.0 * std::sin(5 * kPi / 180)));
    CHECK(std::abs(sc.constants.c - 1086.6) <= 0.1);
    CHECK(sc.mesh_cells == 1000);
    CHECK(sc.t_end == 60.0);
    CHECK(sc.initial_discharge_Q0 == 10.0);
    CHECK(std::get<ReservoirHead>(sc.upstream).head_m == 300.0);
    const auto& valve = std::get<PrescribedDischarge>(sc.downstream);
    CHECK(valve.law.kind == ClosureKind::linear);
    CHECK(valve.law.q0 == 10.0);
    CHECK(valve.law.t_close == 5.0);
    CHECK(sc.probes == std::vector<double>{1000.0, 2000.0});
    CHECK(cfg.cfl_coefficient == 0.8);
    CHECK(cfg.balance == Balance::corrected);
    CHECK_FALSE(sc.friction.enabled);
}

TEST_CASE("defaults fill optional keys") {
    const RunConfig cfg = parse_config(kMinimal);
    CHECK(cfg.solver == SolverKind::kinetic);
    CHECK(cfg.cfl_coefficient == 0.8);
    CHECK(cfg.kernel == "auto");
    CHECK(cfg.scenario.mesh_cells == 1000);
    CHECK(cfg.scenario.probes == std::vector<double>{50.0});
    CHECK(cfg.moc_node_count() == 1001);
}

TEST_CASE("an empty document names every missing key") {
    const auto e = error_of("# nothing here\n\n");
    const std::string msg = e.what();
    for (const auto& key : required_config_keys()) CHECK(msg.find(key) != std::string::npos);
}

TEST_CASE("malformed documents are rejected with the offending key") {
    SUBCASE("duplicate key") {
        const auto e = error_of(kMinimal + "time.end_s = 2\n");
        CHECK(e.key() == "time.end_s");
        CHECK(e.line() == 8);
    }
    SUBCASE("unknown key") {
        const auto e = error_of(kMinimal + "solver.speed = 3\n");
        CHECK(e.key() == "solver.speed");
    }
    SUBCASE("key of another boundary kind") {
        const auto e = error_of(kMinimal + "boundary.upstream.head_m = 3\n");
        CHECK(e.key() == "boundary.upstream.head_m");
    }
    SUBCASE("missing equals sign") { CHECK(error_of(kMinimal + "mesh.cells 10\n").line() == 8); }
    SUBCASE("not a number") { CHECK(error_of(kMinimal + "mesh.cells = ten\n").key() == "mesh.cells"); }
    SUBCASE("fractional cell count") { CHECK(error_of(kMinimal + "mesh.cells = 2.5\n").key() == "mesh.cells"); }
    SUBCASE("cfl out of range") { CHECK(error_of(kMinimal + "solver.cfl = 1.5\n").key() == "solver.cfl"); }
    SUBCASE("zero cfl") { CHECK(error_of(kMinimal + "solver.cfl = 0\n").key() == "solver.cfl"); }
    SUBCASE("bad kernel") { CHECK(error_of(kMinimal + "solver.kernel = neon\n").key() == "solver.kernel"); }
    SUBCASE("bad balance") { CHECK(error_of(kMinimal + "solver.balance = magic\n").key() == "solver.balance"); }
    SUBCASE("friction without strickler") {
        CHECK(error_of(kMinimal + "friction.enabled = true\n").key() == "friction.strickler");
    }
    SUBCASE("table mixed with slope") {
        CHECK(error_of(kMinimal + "pipe.slope_deg = 1\npipe.altitude_table = 0, 1, 100, 0\n").key() ==
              "pipe.altitude_table");
    }
    SUBCASE("elastic speed without wall data") {
        const std::string text =
            "pipe.length_m = 100\npipe.section_m2 = 1\nboundary.upstream.kind = wall\n"
            "boundary.downstream.kind = wall\ntime.end_s = 1\n";
        CHECK(error_of(text).key() == "pipe.wall_thickness_m");
        CHECK_NOTHROW(parse_config(text + "physics.wave_speed = 1000\n"));
    }
    SUBCASE("negative length") {
        std::string text = kMinimal;
        text.replace(text.find("100"), 3, "-100");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
}

TEST_CASE("missing files are config errors") {
    CHECK_THROWS_AS(load_config("/nonexistent/pipeflow.cfg"), ConfigError);
}

TEST_CASE("shipped configs round-trip") {
    for (const char* name : {"waterhammer.cfg", "still_water.cfg"}) {
        CAPTURE(name);
        const auto text = read_file(std::string(PIPEFLOW_SOURCE_DIR) + "/configs/" + name);
        const RunConfig cfg = parse_config(text);
        CHECK(parse_config(emit_config(cfg)) == cfg);
    }
}

TEST_CASE("random configs round-trip through emit and parse") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        CAPTURE(trial);
        RunConfig cfg;
        Scenario& sc = cfg.scenario;
        const double length = rng.log_uniform(1.0, 1e4);
        Altitude alt;
        if (trial % 3 == 0) {
            alt.table_x = {0.0, rng.uniform(0.1, 0.9) * length, length};
            alt.table_z = {rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-50, 50)};
        } else {
            alt.upstream_m = rng.uniform(-100, 500);
            alt.slope_deg = rng.uniform(-10, 10);
        }
        sc.geometry = PipeGeometry::circular(length, rng.log_uniform(0.01, 10), rng.uniform(0.01, 0.5),
                                             rng.log_uniform(1e9, 3e11), alt);
        sc.wave_speed_mode = trial % 2 == 0 ? WaveSpeedMode::elastic : WaveSpeedMode::explicit_value;
        const double beta = rng.log_uniform(1e-10, 1e-9);
        const double rho0 = rng.uniform(900, 1100);
        const double c = resolve_wave_speed(sc.wave_speed_mode, sc.geometry, beta, rho0,
                                            rng.uniform(100, 1500));
        sc.constants = PhysicalConstants::make(rng.uniform(9.7, 9.9), beta, rho0, c);
        sc.friction.enabled = trial % 4 == 1;
        if (sc.friction.enabled) sc.friction.strickler_Ks = rng.uniform(30, 120);
        sc.mesh_cells = static_cast<std::size_t>(rng.uniform(2, 5000));
        sc.initial_discharge_Q0 = rng.uniform(-20, 20);
        sc.upstream = ReservoirHead{rng.uniform(1000, 1500)};
        if (trial % 5 == 0) sc.upstream = Wall{};
        const ClosureKind kinds[] = {ClosureKind::linear, ClosureKind::cosine,
                                     ClosureKind::instantaneous, ClosureKind::constant};
        sc.downstream = PrescribedDischarge{
            ClosureLaw{kinds[trial % 4], sc.initial_discharge_Q0, rng.uniform(0.1, 30)}};
        if (trial % 7 == 0) sc.downstream = ReservoirHead{rng.uniform(1000, 1500)};
        if (trial % 11 == 0) sc.upstream = sc.downstream = Periodic{};
        sc.t_end = rng.uniform(0, 100);
        sc.output_stride = static_cast<std::size_t>(rng.uniform(0, 1000));
        sc.probes = {rng.uniform(0, length), rng.uniform(0, length)};
        cfg.solver = static_cast<SolverKind>(trial % 3);
        cfg.output_dir = "out/run" + std::to_string(trial);
        cfg.cfl_coefficient = rng.uniform(0.01, 1.0);
        cfg.balance = trial % 2 ? Balance::literal : Balance::corrected;
        cfg.kernel = trial % 2 ? "scalar" : "auto";
        cfg.moc_nodes = trial % 3 == 0 ? 0 : static_cast<std::size_t>(rng.uniform(2, 3000));

        const std::string text = emit_config(cfg);
        const RunConfig back = parse_config(text);
        CHECK(back == cfg);
        CHECK(emit_config(back) == text);
    }
}
