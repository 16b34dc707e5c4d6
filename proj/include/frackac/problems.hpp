#pragma once

// Problem data (u₀, g, f, exact) for the manufactured examples.

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "frackac/geometry.hpp"

namespace frackac::problems {

/// (α, β) with α in (0, 2] and β in (0, 1].
struct FractionalOrders {
    double alpha = 1.0;
    double beta = 1.0;

    /// Throws DomainError outside the valid ranges.
    void validate() const;
};

using SpatialFn = std::function<double(std::span<const double>)>;
using SpaceTimeFn = std::function<double(double, std::span<const double>)>;

/// Data of the space-time fractional problem on Ω × (0, T]. f and g accept
/// any real time and treat negative times as 0.
struct Problem {
    std::string name;
    FractionalOrders orders;
    geometry::Domain domain;
    double horizon = 1.0;
    SpatialFn u0;
    SpaceTimeFn g;
    SpaceTimeFn f;
    std::optional<SpaceTimeFn> exact;

    int dim() const noexcept { return domain.dim(); }
};

/// u = t^β (1 - |x|²)₊^{α/2} on the unit ball of ℝⁿ, g = 0.
Problem example1(double alpha, double beta, int dim, double horizon);

/// u = E_β(-t^β) (1 - |x|²)₊^{α/2} on the unit disk, g = 0.
Problem example2(double alpha, double beta, double horizon);

/// u = t^{1.2} (1 + |x|²)^{-7/2} on the L-shape with g = u outside.
Problem example3(double alpha, double beta, double horizon);

/// Oscillating source on a star domain, g = 0, u₀ a fixed pseudo-random
/// field with values in [-2, -1]. No exact solution.
Problem example4(double alpha, double beta, double horizon);
Problem example4(double alpha, double beta, double horizon, geometry::Domain domain);

/// Exponent a in the time factor t^a of example 3.
inline constexpr double kExample3TimeExponent = 1.2;

/// Spatial part of the example-3 source, 2^α Γ((α+7)/2) Γ((α+2)/2) / Γ(7/2)
/// · ₂F₁((2+α)/2, (7+α)/2; 1; -|x|²), the image of (1 + |x|²)^{-7/2}.
double example3_spatial_image(double alpha, double norm2);

/// The example-4 initial field at x.
double hashed_initial_value(std::span<const double> x);

}  // namespace frackac::problems
