#include "frackac/solver.hpp"

#include <cmath>
#include <sstream>

#include "frackac/errors.hpp"
#include "frackac/parallel.hpp"

namespace frackac::solver {

namespace {

std::string describe_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

void check_config(const SolverConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) {
        std::ostringstream os;
        os << "solver: dt = " << config.dt << " must be positive";
        throw UsageError(os.str());
    }
    if (config.num_paths == 0) throw UsageError("solver: num_paths must be at least 1");
}

}  // namespace

std::size_t resolved_max_steps(const problems::Problem& problem, const SolverConfig& config) {
    if (config.max_steps > 0) return config.max_steps;
    return static_cast<std::size_t>(std::ceil(20.0 * std::max(problem.horizon, 1.0) / config.dt));
}

std::uint64_t stream_index(std::size_t point_index, std::size_t path_index) {
    if (path_index >> kPointStreamShift) throw UsageError("stream_index: more than 2^32 paths per point");
    return (static_cast<std::uint64_t>(point_index) << kPointStreamShift) | path_index;
}

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return sum + carry;
}

Simulator::Simulator(const problems::Problem& problem, const SolverConfig& config)
    : problem_(&problem),
      config_(config),
      walk_((check_config(config), wos::make_wos_params(problem.orders.alpha, problem.dim(), config.dt))),
      subordinator_(problem.orders.beta, config.dt),
      max_steps_(0) {
    max_steps_ = resolved_max_steps(problem, config);
}

void Simulator::check_start(double t, std::span<const double> x) const {
    if (!(t > 0.0 && t <= problem_->horizon)) {
        std::ostringstream os;
        os << "solver: evaluation time t = " << t << " outside (0, T] with T = " << problem_->horizon;
        throw UsageError(os.str());
    }
    if (!problem_->domain.contains(x))
        throw UsageError("solver: start point " + describe_point(x) + " is not inside the " + problem_->domain.kind() +
                         " domain");
}

TrajectoryOutcome Simulator::run(double t, std::span<const double> x, std::uint64_t stream) const {
    const problems::Problem& p = *problem_;
    RngStream rng(config_.master_seed, stream);
    std::vector<double> pos(x.begin(), x.end());
    std::vector<double> dir(pos.size());
    double y = 0.0;
    double source_sum = 0.0;

    for (std::size_t k = 1;; ++k) {
        if (k > max_steps_) {
            std::ostringstream os;
            os << "trajectory " << stream << " from " << describe_point(x) << " exceeded max_steps = " << max_steps_;
            throw TrajectoryError(os.str());
        }
        y = subordinator_.advance(y, k, rng);
        wos::advance(pos, walk_, rng, dir);
        source_sum += p.f(std::max(t - y, 0.0), pos);

        const bool exited = !p.domain.contains_unchecked(pos);
        if (exited || y >= t) {
            TrajectoryOutcome out;
            out.stop_kind = exited ? StopKind::spatial : StopKind::temporal;
            out.stop_index = k;
            out.payoff = exited ? p.g(t - y, pos) : p.u0(pos);
            out.quadrature = config_.dt * source_sum;
            out.contribution = out.payoff + out.quadrature;
            out.subordinator = y;
            out.stop_position = std::move(pos);
            return out;
        }
    }
}

TrajectoryOutcome simulate_trajectory(const problems::Problem& problem, double t, std::span<const double> x,
                                      const SolverConfig& config, std::uint64_t stream_index) {
    const Simulator sim(problem, config);
    sim.check_start(t, x);
    return sim.run(t, x, stream_index);
}

ContributionBatch trajectory_contributions(const Simulator& sim, double t, std::span<const double> x,
                                           std::size_t num_paths, std::size_t point_index, std::size_t workers) {
    sim.check_start(t, x);
    ContributionBatch batch;
    batch.values.assign(num_paths, 0.0);
    batch.failed.assign(num_paths, 0);
    const std::uint64_t base = stream_index(point_index, 0);
    stream_index(point_index, num_paths - 1);  // range check
    parallel_for(num_paths, workers, [&](std::size_t j) {
        try {
            batch.values[j] = sim.run(t, x, base | j).contribution;
        } catch (const TrajectoryError&) {
            batch.failed[j] = 1;
        }
    });
    return batch;
}

Estimate summarize(const ContributionBatch& batch, std::size_t count) {
    if (count == 0 || count > batch.values.size()) throw UsageError("summarize: count outside the batch");
    std::vector<double> ok;
    ok.reserve(count);
    std::size_t errors = 0;
    for (std::size_t j = 0; j < count; ++j) {
        if (batch.failed[j])
            ++errors;
        else
            ok.push_back(batch.values[j]);
    }
    if (static_cast<double>(errors) >= 1e-3 * static_cast<double>(count)) {
        std::ostringstream os;
        os << errors << " of " << count << " trajectories exceeded the step cap (limit: fraction 1e-3)";
        throw TrajectoryError(os.str());
    }
    Estimate e;
    e.num_paths = ok.size();
    e.num_errors = errors;
    const double m = static_cast<double>(ok.size());
    e.mean = compensated_sum(ok) / m;
    if (ok.size() > 1) {
        std::vector<double> sq(ok.size());
        for (std::size_t j = 0; j < ok.size(); ++j) sq[j] = (ok[j] - e.mean) * (ok[j] - e.mean);
        e.std_error = std::sqrt(compensated_sum(sq) / (m - 1.0) / m);
    }
    return e;
}

Estimate estimate_point(const problems::Problem& problem, double t, std::span<const double> x,
                        const SolverConfig& config) {
    const Simulator sim(problem, config);
    return summarize(trajectory_contributions(sim, t, x, config.num_paths, 0, config.workers), config.num_paths);
}

std::vector<Estimate> estimate_field(const problems::Problem& problem, double t,
                                     const std::vector<std::vector<double>>& points, const SolverConfig& config) {
    const Simulator sim(problem, config);
    for (const auto& x : points) sim.check_start(t, x);
    std::vector<Estimate> out;
    out.reserve(points.size());
    for (std::size_t p = 0; p < points.size(); ++p)
        out.push_back(summarize(trajectory_contributions(sim, t, points[p], config.num_paths, p, config.workers),
                                config.num_paths));
    return out;
}

}  // namespace frackac::solver
