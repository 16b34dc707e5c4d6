#pragma once

// L² error against exact solutions and convergence sweeps in M or Δt.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "frackac/problems.hpp"
#include "frackac/solver.hpp"

namespace frackac::harness {

/// Settings a report was produced with.
struct ConfigEcho {
    double alpha = 0.0;
    double beta = 0.0;
    int dim = 0;
    double horizon = 0.0;
    double time = 0.0;
    double dt = 0.0;
    std::size_t num_paths = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t eval_seed = 0;
    std::size_t max_steps = 0;
};

struct PointResult {
    geometry::Point point;
    double exact = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
};

struct ErrorReport {
    double l2_error = 0.0;
    /// Same weighting applied to the standard errors; the Monte Carlo noise scale.
    double noise_level = 0.0;
    std::size_t num_eval_points = 0;
    std::size_t num_errors = 0;  ///< failed trajectories over all points
    std::vector<PointResult> per_point;
    ConfigEcho config;
};

/// √(|Ω|/N Σ (exact - estimate)²).
double l2_error(std::span<const PointResult> points, double volume);

/// Uniform evaluation points drawn from their own seed, independent of the
/// trajectory streams.
std::vector<geometry::Point> evaluation_points(const geometry::Domain& domain, std::size_t count,
                                               std::uint64_t eval_seed);

/// Replacement for the solver at one evaluation point; `index` is the
/// point's position in the evaluation list.
using PointEstimator = std::function<solver::Estimate(std::span<const double> x, std::size_t index)>;

/// Error of the solver at time `time` over `num_eval_points` random points.
/// Throws UsageError without an exact solution.
ErrorReport measure_l2_error(const problems::Problem& problem, double time, const solver::SolverConfig& config,
                             std::size_t num_eval_points, std::uint64_t eval_seed);

ErrorReport measure_l2_error(const problems::Problem& problem, double time, const solver::SolverConfig& config,
                             std::size_t num_eval_points, std::uint64_t eval_seed, const PointEstimator& estimator);

enum class SweepAxis { num_paths, dt };

std::string_view axis_name(SweepAxis axis);
/// Inverse of axis_name; throws ConfigError for unknown names.
SweepAxis parse_axis(std::string_view name);

/// Least-squares line y = intercept + slope·x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    std::size_t num_points = 0;
};

/// Fit of log y against log x over the pairs where both are finite and
/// positive. Throws AnalysisError with fewer than three such pairs.
LineFit fit_log_log(std::span<const double> x, std::span<const double> y);

struct ConvergenceRow {
    double axis_value = 0.0;
    double l2_error = 0.0;
    ErrorReport report;
};

struct ConvergenceTable {
    SweepAxis axis = SweepAxis::num_paths;
    std::vector<ConvergenceRow> rows;  ///< ascending axis value
    double fitted_slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
};

/// Error for each value of one axis, the other held at `base`. Path counts
/// are rounded to the nearest integer. An M-sweep simulates the largest M once
/// per point and reads smaller M off its prefixes, which is bit-identical to
/// separate runs.
ConvergenceTable sweep(const problems::Problem& problem, double time, const solver::SolverConfig& base,
                       SweepAxis axis, std::span<const double> values, std::size_t num_eval_points,
                       std::uint64_t eval_seed);

/// Columns x1..xn, exact, estimate, std_error.
void write_report_csv(std::ostream& out, const ErrorReport& report);
/// Columns axis_value, l2_error.
void write_table_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace frackac::harness
