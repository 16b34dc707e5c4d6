#pragma once

// One-sided β-stable variates and the discrete subordinator path.

#include <cstddef>
#include <vector>

#include "frackac/rng.hpp"

namespace frackac::stable {

/// log η for η totally skewed positive β-stable with E[exp(-kη)] = exp(-k^β).
/// Working in logs keeps small β (where η spans hundreds of decades) finite.
double sample_log_one_sided_stable(double beta, RngStream& rng);

/// η itself; may overflow to +inf or underflow to 0 for very small β.
double sample_one_sided_stable(double beta, RngStream& rng);

/// Stepper for Y(t_i) = Y(t_{i-1}) + Δt^{1/β} η_i.
class Subordinator {
public:
    Subordinator(double beta, double dt);

    double beta() const noexcept { return beta_; }
    double dt() const noexcept { return dt_; }

    /// Value at grid index `index` >= 1 given the value at index - 1.
    /// For β = 1 the path is exactly index·Δt.
    double advance(double previous, std::size_t index, RngStream& rng) const;

private:
    double beta_;
    double dt_;
    double log_scale_;  // log(Δt) / β
};

struct SubordinatorPath {
    double dt = 0.0;
    std::vector<double> values;   ///< values[0] = 0, strictly increasing
    std::size_t stop_index = 0;   ///< first i with values[i] >= t
};

/// Path up to and including the first index where Y >= t.
SubordinatorPath subordinator_path(double beta, double dt, double t, RngStream& rng);

}  // namespace frackac::stable
