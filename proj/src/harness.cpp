#include "frackac/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "frackac/csv.hpp"
#include "frackac/errors.hpp"
#include "frackac/parallel.hpp"

namespace frackac::harness {

namespace {

constexpr std::uint64_t kEvaluationStream = 0;

ConfigEcho echo(const problems::Problem& problem, double time, const solver::SolverConfig& config,
                std::uint64_t eval_seed) {
    ConfigEcho e;
    e.alpha = problem.orders.alpha;
    e.beta = problem.orders.beta;
    e.dim = problem.dim();
    e.horizon = problem.horizon;
    e.time = time;
    e.dt = config.dt;
    e.num_paths = config.num_paths;
    e.master_seed = config.master_seed;
    e.eval_seed = eval_seed;
    e.max_steps = solver::resolved_max_steps(problem, config);
    return e;
}

void check_inputs(const problems::Problem& problem, std::size_t num_eval_points) {
    if (!problem.exact) throw UsageError("measure_l2_error: problem '" + problem.name + "' has no exact solution");
    if (num_eval_points == 0) throw UsageError("measure_l2_error: num_eval_points must be at least 1");
}

ErrorReport assemble(const problems::Problem& problem, double time, std::vector<geometry::Point> points,
                     const std::vector<solver::Estimate>& estimates, ConfigEcho config) {
    ErrorReport report;
    report.num_eval_points = points.size();
    report.config = config;
    report.per_point.reserve(points.size());
    double noise = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        PointResult r;
        r.exact = (*problem.exact)(time, points[i]);
        r.estimate = estimates[i].mean;
        r.std_error = estimates[i].std_error;
        r.point = std::move(points[i]);
        noise += r.std_error * r.std_error;
        report.num_errors += estimates[i].num_errors;
        report.per_point.push_back(std::move(r));
    }
    const double volume = problem.domain.volume();
    report.l2_error = l2_error(report.per_point, volume);
    report.noise_level = std::sqrt(volume / static_cast<double>(points.size()) * noise);
    return report;
}

std::vector<double> sorted_axis(SweepAxis axis, std::span<const double> values) {
    if (values.size() < 3) throw UsageError("sweep: at least three axis values are required");
    std::vector<double> v;
    for (double x : values) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            std::ostringstream os;
            os << "sweep: axis value " << x << " must be finite and positive";
            throw UsageError(os.str());
        }
        v.push_back(axis == SweepAxis::num_paths ? std::max(1.0, std::round(x)) : x);
    }
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
        throw UsageError("sweep: axis values must be distinct after rounding");
    return v;
}

}  // namespace

double l2_error(std::span<const PointResult> points, double volume) {
    if (points.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& p : points) sum += (p.exact - p.estimate) * (p.exact - p.estimate);
    return std::sqrt(volume / static_cast<double>(points.size()) * sum);
}

std::vector<geometry::Point> evaluation_points(const geometry::Domain& domain, std::size_t count,
                                               std::uint64_t eval_seed) {
    RngStream rng(eval_seed, kEvaluationStream);
    return geometry::sample_interior_points(domain, count, rng);
}

ErrorReport measure_l2_error(const problems::Problem& problem, double time, const solver::SolverConfig& config,
                             std::size_t num_eval_points, std::uint64_t eval_seed) {
    check_inputs(problem, num_eval_points);
    const solver::Simulator sim(problem, config);
    const PointEstimator estimator = [&](std::span<const double> x, std::size_t index) {
        return solver::summarize(solver::trajectory_contributions(sim, time, x, config.num_paths, index, 1),
                                 config.num_paths);
    };
    return measure_l2_error(problem, time, config, num_eval_points, eval_seed, estimator);
}

ErrorReport measure_l2_error(const problems::Problem& problem, double time, const solver::SolverConfig& config,
                             std::size_t num_eval_points, std::uint64_t eval_seed, const PointEstimator& estimator) {
    check_inputs(problem, num_eval_points);
    auto points = evaluation_points(problem.domain, num_eval_points, eval_seed);
    const solver::Simulator sim(problem, config);
    sim.check_start(time, points.front());
    std::vector<solver::Estimate> estimates(points.size());
    parallel_for(points.size(), config.workers, [&](std::size_t i) { estimates[i] = estimator(points[i], i); });
    return assemble(problem, time, std::move(points), estimates, echo(problem, time, config, eval_seed));
}

std::string_view axis_name(SweepAxis axis) { return axis == SweepAxis::num_paths ? "num_paths" : "dt"; }

SweepAxis parse_axis(std::string_view name) {
    if (name == "num_paths") return SweepAxis::num_paths;
    if (name == "dt") return SweepAxis::dt;
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected num_paths or dt)");
}

LineFit fit_log_log(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw UsageError("fit_log_log: x and y differ in length");
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    const std::size_t n = lx.size();
    if (n < 3) throw AnalysisError("fit_log_log: fewer than three finite positive points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw AnalysisError("fit_log_log: all x values coincide");
    LineFit fit;
    fit.num_points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - fit.intercept - fit.slope * lx[i];
        ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return fit;
}

ConvergenceTable sweep(const problems::Problem& problem, double time, const solver::SolverConfig& base,
                       SweepAxis axis, std::span<const double> values, std::size_t num_eval_points,
                       std::uint64_t eval_seed) {
    check_inputs(problem, num_eval_points);
    const auto axis_values = sorted_axis(axis, values);
    ConvergenceTable table;
    table.axis = axis;

    if (axis == SweepAxis::dt) {
        for (double dt : axis_values) {
            auto config = base;
            config.dt = dt;
            auto report = measure_l2_error(problem, time, config, num_eval_points, eval_seed);
            table.rows.push_back({dt, report.l2_error, std::move(report)});
        }
    } else {
        const auto largest = static_cast<std::size_t>(axis_values.back());
        const auto points = evaluation_points(problem.domain, num_eval_points, eval_seed);
        const solver::Simulator sim(problem, base);
        sim.check_start(time, points.front());
        // estimates[k][i]: k-th path count at point i
        std::vector<std::vector<solver::Estimate>> estimates(axis_values.size(),
                                                             std::vector<solver::Estimate>(points.size()));
        parallel_for(points.size(), base.workers, [&](std::size_t i) {
            const auto batch = solver::trajectory_contributions(sim, time, points[i], largest, i, 1);
            for (std::size_t k = 0; k < axis_values.size(); ++k)
                estimates[k][i] = solver::summarize(batch, static_cast<std::size_t>(axis_values[k]));
        });
        for (std::size_t k = 0; k < axis_values.size(); ++k) {
            auto config = base;
            config.num_paths = static_cast<std::size_t>(axis_values[k]);
            auto report = assemble(problem, time, points, estimates[k], echo(problem, time, config, eval_seed));
            table.rows.push_back({axis_values[k], report.l2_error, std::move(report)});
        }
    }

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : table.rows) {
        xs.push_back(row.axis_value);
        ys.push_back(row.l2_error);
    }
    const auto fit = fit_log_log(xs, ys);
    table.fitted_slope = fit.slope;
    table.slope_stderr = fit.slope_stderr;
    table.intercept = fit.intercept;
    return table;
}

void write_report_csv(std::ostream& out, const ErrorReport& report) {
    auto header = csv::numbered("x", report.config.dim);
    header.insert(header.end(), {"exact", "estimate", "std_error"});
    csv::write_row(out, header);
    for (const auto& p : report.per_point) {
        std::vector<std::string> row;
        for (double c : p.point) row.push_back(csv::format(c));
        row.push_back(csv::format(p.exact));
        row.push_back(csv::format(p.estimate));
        row.push_back(csv::format(p.std_error));
        csv::write_row(out, row);
    }
}

void write_table_csv(std::ostream& out, const ConvergenceTable& table) {
    csv::write_row(out, {"axis_value", "l2_error"});
    for (const auto& row : table.rows) csv::write_row(out, {csv::format(row.axis_value), csv::format(row.l2_error)});
}

}  // namespace frackac::harness
