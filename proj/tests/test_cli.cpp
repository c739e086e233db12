#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "pipeflow_cli_tests";

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_config(const std::string& name, const std::string& extra) {
    fs::create_directories(kScratch);
    const std::string base = slurp(fs::path(PIPEFLOW_SOURCE_DIR) / "configs" / "still_water.cfg");
    const fs::path path = kScratch / name;
    std::ofstream(path) << base << extra;
    return path;
}

int pipeflow(const std::string& args) {
    const std::string cmd =
        std::string("\"") + PIPEFLOW_CLI + "\" " + args + " > \"" + (kScratch / "log.txt").string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("run succeeds and writes output") {
    const auto out = kScratch / "run_out";
    fs::remove_all(out);
    const auto cfg = write_config("run.cfg", "");
    CHECK(pipeflow("run \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "kinetic_probe_0.csv"));
    CHECK(fs::exists(out / "kinetic_summary.txt"));
}

TEST_CASE("configuration problems exit with 2") {
    const auto bad = write_config("bad.cfg", "solver.cfl = 1.5\n");
    CHECK(pipeflow("run \"" + bad.string() + "\"") == 2);
    CHECK(pipeflow("run \"" + (kScratch / "missing.cfg").string() + "\"") == 2);
    const auto ok = write_config("ok.cfg", "");
    CHECK(pipeflow("run \"" + ok.string() + "\" --cfl 2") == 2);
    CHECK(pipeflow("run \"" + ok.string() + "\" --kernel neon") == 2);
    CHECK(pipeflow("frobnicate") == 2);
}

TEST_CASE("solver failures exit with 3") {
    // The characteristics solver has no periodic boundary.
    const auto cfg = kScratch / "periodic.cfg";
    fs::create_directories(kScratch);
    std::ofstream(cfg) << "pipe.length_m = 100\npipe.section_m2 = 1\n"
                          "physics.wave_speed = 1000\nmesh.cells = 20\n"
                          "boundary.upstream.kind = periodic\nboundary.downstream.kind = periodic\n"
                          "time.end_s = 0.01\noutput.dir = "
                       << (kScratch / "periodic_out").string() << "\n";
    CHECK(pipeflow("compare \"" + cfg.string() + "\"") == 3);
}

TEST_CASE("failed invariant checks exit with 4") {
    const auto literal = write_config("literal.cfg", "solver.balance = literal\n");
    CHECK(pipeflow("check \"" + literal.string() + "\"") == 4);
    const auto corrected = write_config("corrected.cfg", "");
    CHECK(pipeflow("check \"" + corrected.string() + "\"") == 0);
}

TEST_CASE("compare writes a report") {
    const auto out = kScratch / "compare_out";
    fs::remove_all(out);
    const auto cfg = write_config("compare.cfg", "");
    CHECK(pipeflow("compare \"" + cfg.string() + "\" --out \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "compare_report.txt"));
    CHECK(fs::exists(out / "moc_probe_0.csv"));
}
