#pragma once

// Walk-on-spheres stepping for the symmetric α-stable process.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frackac/rng.hpp"
#include "frackac/specfun.hpp"

namespace frackac::wos {

/// C_n^α = Γ(n/2) / (2^α Γ(1 + α/2) Γ((n + α)/2)), so that E[τ_r] = r^α C_n^α.
double exit_time_constant(double alpha, int dim);

/// Radius r with r^α C_n^α = Δt.
double ball_radius(double alpha, int dim, double dt);

/// Cap on jump distances. Squares of coordinates stay finite, and every
/// bounded domain is left long before it.
inline constexpr double kMaxJump = 1e150;

/// Radial exit law from the centre of a ball: the jump distance over the
/// radius is x^{-1/2} with x ~ Beta(α/2, 1 - α/2).
class JumpLaw {
public:
    explicit JumpLaw(double alpha);

    double alpha() const noexcept { return alpha_; }

    /// J / r for the uniform variate ω in (0, 1); exactly 1 when α = 2.
    /// May be +inf when the quantile underflows.
    double scaled_distance(double omega) const;

private:
    double alpha_;
    std::optional<specfun::BetaQuantileTable> law_;
};

/// J = r · I⁻¹_ω(α/2, 1 - α/2)^{-1/2} >= r, capped at max(r, kMaxJump).
double sample_jump_radius(double alpha, double radius, double omega);

/// Uniform point on S^{n-1} written into `out` (size n >= 2).
void fill_unit_direction(std::span<double> out, RngStream& rng);
std::vector<double> sample_unit_direction(int dim, RngStream& rng);

struct WosParams {
    double alpha = 2.0;
    int dim = 2;
    double dt = 0.0;
    double radius = 0.0;
    JumpLaw jump{2.0};
};

WosParams make_wos_params(double alpha, int dim, double dt);

struct SpatialState {
    std::vector<double> position;
    std::size_t step_index = 0;
};

/// One ball step: draws ω, then a direction, and moves by J along it.
/// `direction` is caller-owned scratch of size dim. Returns J.
double advance(std::span<double> position, const WosParams& params, RngStream& rng,
               std::span<double> direction);

SpatialState wos_step(const SpatialState& state, const WosParams& params, RngStream& rng);

}  // namespace frackac::wos
