// pipeflow: run, compare and check pressurized pipe-flow scenarios.
//
// Exit codes: 0 success, 2 configuration error, 3 solver error,
// 4 invariant check failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "pipeflow/check.hpp"
#include "pipeflow/compare.hpp"
#include "pipeflow/config.hpp"
#include "pipeflow/simulation.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kSolver = 3, kCheck = 4 };

struct Overrides {
    std::optional<std::size_t> cells;
    std::optional<double> cfl;
    std::optional<std::string> out;
    std::optional<std::string> kernel;
};

pipeflow::RunConfig load(const std::string& path, const Overrides& o) {
    pipeflow::RunConfig cfg = pipeflow::load_config(path);
    if (o.cells) cfg.scenario.mesh_cells = *o.cells;
    if (o.cfl) cfg.cfl_coefficient = *o.cfl;
    if (o.out) cfg.output_dir = *o.out;
    if (o.kernel) cfg.kernel = *o.kernel;
    cfg.validate();
    return cfg;
}

double closure_end(const pipeflow::Scenario& sc) {
    double end = 0.0;
    for (const auto* bc : {&sc.upstream, &sc.downstream}) {
        if (const auto* p = std::get_if<pipeflow::PrescribedDischarge>(bc)) {
            if (p->law.kind != pipeflow::ClosureKind::constant) end = std::max(end, p->law.t_close);
        }
    }
    return end;
}

void print_summaries(const std::vector<pipeflow::SolverOutput>& outputs) {
    for (const auto& out : outputs) std::cout << pipeflow::format_summary(out);
}

int cmd_run(const pipeflow::RunConfig& cfg) {
    const auto outputs = pipeflow::run_simulation(cfg);
    print_summaries(outputs);
    std::cout << "output written to " << cfg.output_dir << '\n';
    return kOk;
}

int cmd_compare(pipeflow::RunConfig cfg) {
    cfg.solver = pipeflow::SolverKind::both;
    const auto outputs = pipeflow::run_simulation(cfg);
    print_summaries(outputs);
    const auto& kinetic = outputs.at(0);
    const auto& moc = outputs.at(1);
    pipeflow::CompareWindow window;
    window.period_start = closure_end(cfg.scenario);

    std::string text;
    for (std::size_t k = 0; k < kinetic.probes.size(); ++k) {
        const auto report = pipeflow::compare_series(kinetic.probes[k], moc.probes[k], window);
        text += pipeflow::format_report(report);
        text += '\n';
    }
    const auto path = std::filesystem::path(cfg.output_dir) / "compare_report.txt";
    std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
    std::cout << text << "report written to " << path.string() << '\n';
    return kOk;
}

int cmd_check(const pipeflow::RunConfig& cfg) {
    const auto report = pipeflow::check_invariants(cfg);
    std::cout << pipeflow::format_check(report);
    return report.passed() ? kOk : kCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinetic-scheme simulator for pressurized pipe flow"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "scenario configuration file")->required();
        sub->add_option_function<std::size_t>(
            "--cells", [&](const std::size_t& v) { overrides.cells = v; }, "override mesh.cells");
        sub->add_option_function<double>(
            "--cfl", [&](const double& v) { overrides.cfl = v; }, "override solver.cfl");
        sub->add_option_function<std::string>(
            "--out", [&](const std::string& v) { overrides.out = v; }, "override output.dir");
        sub->add_option_function<std::string>(
            "--kernel", [&](const std::string& v) { overrides.kernel = v; },
            "flux kernel: scalar, avx2 or auto");
    };
    auto* run = app.add_subcommand("run", "run the configured solver(s) and write CSV output");
    auto* compare = app.add_subcommand("compare", "run kinetic and MOC solvers and compare probes");
    auto* check = app.add_subcommand("check", "run the invariant suites on the scenario");
    for (auto* sub : {run, compare, check}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    pipeflow::RunConfig cfg;
    try {
        cfg = load(config_path, overrides);
    } catch (const pipeflow::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }

    try {
        if (run->parsed()) return cmd_run(cfg);
        if (compare->parsed()) return cmd_compare(cfg);
        return cmd_check(cfg);
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    }
}
