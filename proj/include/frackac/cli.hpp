#pragma once

// Command-line front end: solve, convergence and field runs driven by a JSON
// configuration file with flag overrides.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frackac/geometry.hpp"
#include "frackac/harness.hpp"
#include "frackac/problems.hpp"
#include "frackac/solver.hpp"

namespace frackac::cli {

enum class Command { solve, convergence, field };

std::string_view command_name(Command command);

/// Fully resolved run settings. Defaults are listed beside each field.
struct RunConfig {
    // problem
    std::string problem = "example1";
    double alpha = 1.0;
    double beta = 0.5;
    int dim = 2;
    double horizon = 1.0;
    std::optional<geometry::Domain> domain;  ///< example4 only; hailstone when absent

    // solver (workers: available parallelism)
    solver::SolverConfig solver;

    // solve
    std::optional<double> solve_time;  ///< horizon when absent
    std::vector<geometry::Point> points;

    // harness
    std::optional<double> harness_time;  ///< horizon when absent
    std::size_t num_eval_points = 200;
    std::uint64_t eval_seed = 1;
    harness::SweepAxis axis = harness::SweepAxis::num_paths;
    std::vector<double> values;

    // field
    std::vector<double> times;  ///< {horizon} when empty
    int resolution = 50;
    std::optional<geometry::Point> grid_lower;  ///< domain bounding box when absent
    std::optional<geometry::Point> grid_upper;

    std::string out_dir = "frackac_out";

    /// Where seed, workers and out_dir came from: "default", "file", "env" or "flag".
    std::map<std::string, std::string> sources;
};

/// Parses configuration text. Unknown keys, wrong types and invalid values
/// throw ConfigError naming the field; syntax errors report line and column.
RunConfig parse_config(std::string_view text, std::string_view source_name);

/// Problem selected by the configuration.
problems::Problem make_problem(const RunConfig& config);

/// Cross-field checks for one command; throws ConfigError naming the field.
void validate(const RunConfig& config, Command command);

/// Cell-centred grid points of the field box that lie inside the domain.
std::vector<geometry::Point> field_grid(const RunConfig& config, const problems::Problem& problem);

/// Resolved configuration as indented JSON.
std::string describe(const RunConfig& config, Command command);

/// Entry point; returns the process exit status. Failures print one line
/// `frackac: error[<code>]: <message>` to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frackac::cli
