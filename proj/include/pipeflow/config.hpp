#pragma once
// Line-oriented `key = value` run configuration.
//
//   # comment
//   pipe.length_m = 2000
//   boundary.upstream.kind = reservoir
//
// Unknown keys, keys that do not apply to the chosen boundary kinds, and
// duplicates are rejected.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pipeflow/kinetic.hpp"
#include "pipeflow/scenarios.hpp"

namespace pipeflow {

enum class SolverKind { kinetic, moc, both };

std::string_view to_string(SolverKind kind);

struct RunConfig {
    Scenario scenario;
    SolverKind solver = SolverKind::kinetic;
    std::string output_dir = "out";
    double cfl_coefficient = 0.8;
    Balance balance = Balance::corrected;
    std::string kernel = "auto";  // scalar | avx2 | auto
    std::size_t moc_nodes = 0;    // 0: cells + 1

    [[nodiscard]] KineticParams kinetic_params() const;
    [[nodiscard]] std::size_t moc_node_count() const;
    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, std::string key = {}, int line = 0)
        : std::runtime_error(message), key_(std::move(key)), line_(line) {}

    [[nodiscard]] const std::string& key() const { return key_; }
    [[nodiscard]] int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
// Inverse of parse_config: every key written explicitly, numbers with 17
// significant digits.
std::string emit_config(const RunConfig& config);

// Keys a document must always define.
const std::vector<std::string>& required_config_keys();

}  // namespace pipeflow
