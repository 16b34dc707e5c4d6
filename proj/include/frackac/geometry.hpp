#pragma once

// Bounded domains Ω. Membership uses the open-set convention: points on ∂Ω
// are outside.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frackac/rng.hpp"

namespace frackac::geometry {

using Point = std::vector<double>;

struct Ball {
    Point center;
    double radius = 1.0;
};

/// (-1, 1)² with the closed quadrant [0, 1]² removed.
struct LShape {};

/// Star domain |x| < R(θ) with R(θ) = base + Σ amp·sin(kθ) + Σ amp·cos(kθ).
struct PolarStar {
    struct Mode {
        int k = 0;
        double amplitude = 0.0;
    };
    double base = 1.0;
    std::vector<Mode> sine;
    std::vector<Mode> cosine;

    double boundary_radius(double theta) const;
};

struct HyperRectangle {
    Point lower;
    Point upper;
};

class Domain {
public:
    using Shape = std::variant<Ball, LShape, PolarStar, HyperRectangle>;

    explicit Domain(Shape shape);

    static Domain unit_ball(int dim);
    static Domain l_shape();
    /// R(θ) = 1 + 0.9 sin 6θ + 0.1 cos 10θ.
    static Domain hailstone();

    const Shape& shape() const noexcept { return shape_; }
    std::string kind() const;
    int dim() const noexcept { return dim_; }
    double volume() const noexcept { return volume_; }
    double bounding_radius() const noexcept { return bounding_radius_; }
    const Point& centroid() const noexcept { return centroid_; }
    const Point& box_lower() const noexcept { return box_lower_; }
    const Point& box_upper() const noexcept { return box_upper_; }

    /// Throws UsageError on dimension mismatch.
    bool contains(std::span<const double> x) const;
    /// No dimension check; for hot loops that already validated sizes.
    bool contains_unchecked(std::span<const double> x) const noexcept;

private:
    Shape shape_;
    int dim_ = 0;
    double volume_ = 0.0;
    double bounding_radius_ = 0.0;
    Point centroid_;  ///< centre of the bounding ball
    Point box_lower_;
    Point box_upper_;
};

bool operator==(const Domain& a, const Domain& b);

/// `count` i.i.d. uniform points of Ω. Rejection from the bounding box, except
/// balls above ten dimensions, which are sampled directly.
std::vector<Point> sample_interior_points(const Domain& domain, std::size_t count, RngStream& rng);

}  // namespace frackac::geometry
