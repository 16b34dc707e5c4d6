#pragma once

// Feynman–Kac Monte Carlo estimator: couples the subordinator and the
// walk on spheres on the grid t_i = iΔt and averages trajectory payoffs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "frackac/problems.hpp"
#include "frackac/stable.hpp"
#include "frackac/wos.hpp"

namespace frackac::solver {

struct SolverConfig {
    double dt = 1e-3;
    std::size_t num_paths = 1000;
    std::uint64_t master_seed = 0;
    std::size_t max_steps = 0;  ///< 0 selects ceil(20·max(T, 1)/Δt)
    std::size_t workers = 1;
};

/// Step cap used for `problem` under `config`.
std::size_t resolved_max_steps(const problems::Problem& problem, const SolverConfig& config);

/// Trajectory j of evaluation point p draws from stream (p << 32) | j.
inline constexpr unsigned kPointStreamShift = 32;
std::uint64_t stream_index(std::size_t point_index, std::size_t path_index);

enum class StopKind { temporal, spatial };

struct TrajectoryOutcome {
    StopKind stop_kind = StopKind::temporal;
    std::size_t stop_index = 0;     ///< k_j, number of grid steps taken
    double payoff = 0.0;            ///< u₀(X) on a temporal stop, g(t - Y, X) on a spatial one
    double quadrature = 0.0;        ///< Δt Σ_{i=1}^{k_j} f(t - Y_i, X_i)
    double contribution = 0.0;      ///< payoff + quadrature
    double subordinator = 0.0;      ///< Y at the stop
    std::vector<double> stop_position;
};

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample std / √M; 0 when M = 1
    std::size_t num_paths = 0;
    std::size_t num_errors = 0;  ///< trajectories that hit max_steps
};

/// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> values);

/// Per-(problem, Δt) state shared by all trajectories: ball radius, jump law,
/// subordinator scale and step cap.
class Simulator {
public:
    Simulator(const problems::Problem& problem, const SolverConfig& config);

    const problems::Problem& problem() const noexcept { return *problem_; }
    const wos::WosParams& walk() const noexcept { return walk_; }
    std::size_t max_steps() const noexcept { return max_steps_; }

    /// One trajectory from (t, x). Throws TrajectoryError past max_steps.
    TrajectoryOutcome run(double t, std::span<const double> x, std::uint64_t stream) const;

    /// Checks 0 < t <= T and x in Ω; throws UsageError otherwise.
    void check_start(double t, std::span<const double> x) const;

private:
    const problems::Problem* problem_;
    SolverConfig config_;
    wos::WosParams walk_;
    stable::Subordinator subordinator_;
    std::size_t max_steps_;
};

TrajectoryOutcome simulate_trajectory(const problems::Problem& problem, double t, std::span<const double> x,
                                      const SolverConfig& config, std::uint64_t stream_index);

/// Contributions of trajectories 0..M-1 for one point, in index order.
struct ContributionBatch {
    std::vector<double> values;
    std::vector<std::uint8_t> failed;  ///< 1 where the trajectory hit max_steps
};

ContributionBatch trajectory_contributions(const Simulator& sim, double t, std::span<const double> x,
                                           std::size_t num_paths, std::size_t point_index, std::size_t workers);

/// Estimate from the first `count` entries of a batch. Throws TrajectoryError
/// when at least a 1e-3 fraction of them failed.
Estimate summarize(const ContributionBatch& batch, std::size_t count);

/// u*_M(t, x) with streams 0..M-1.
Estimate estimate_point(const problems::Problem& problem, double t, std::span<const double> x,
                        const SolverConfig& config);

/// Independent estimates; point p uses the stream block p << 32, so point 0
/// reproduces estimate_point.
std::vector<Estimate> estimate_field(const problems::Problem& problem, double t,
                                     const std::vector<std::vector<double>>& points, const SolverConfig& config);

}  // namespace frackac::solver
