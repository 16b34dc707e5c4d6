#include "frackac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frackac/errors.hpp"
#include "frackac/specfun.hpp"
#include "frackac/wos.hpp"

namespace frackac::geometry {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double star_area(const PolarStar& s) {
    // Periodic trapezoid rule; exact for R² once nodes exceed twice the top mode.
    int top = 0;
    for (const auto& m : s.sine) top = std::max(top, m.k);
    for (const auto& m : s.cosine) top = std::max(top, m.k);
    const int nodes = std::max(4096, 8 * top);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double r = s.boundary_radius(kTwoPi * i / nodes);
        sum += r * r;
    }
    return 0.5 * kTwoPi * sum / nodes;
}

std::string describe_point(std::span<const double> x) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

}  // namespace

double PolarStar::boundary_radius(double theta) const {
    double r = base;
    for (const auto& m : sine) r += m.amplitude * std::sin(m.k * theta);
    for (const auto& m : cosine) r += m.amplitude * std::cos(m.k * theta);
    return r;
}

Domain::Domain(Shape shape) : shape_(std::move(shape)) {
    struct Setup {
        Domain& d;

        void operator()(const Ball& b) const {
            d.dim_ = static_cast<int>(b.center.size());
            if (d.dim_ < 2) throw ConfigError("ball: dimension must be at least 2");
            if (!(b.radius > 0.0) || !std::isfinite(b.radius)) throw ConfigError("ball: radius must be positive");
            const double n = d.dim_;
            d.volume_ = std::exp(0.5 * n * std::log(std::numbers::pi) - specfun::log_gamma(0.5 * n + 1.0) +
                                 n * std::log(b.radius));
            d.bounding_radius_ = b.radius;
            d.centroid_ = b.center;
            d.box_lower_ = b.center;
            d.box_upper_ = b.center;
            for (int i = 0; i < d.dim_; ++i) {
                d.box_lower_[i] -= b.radius;
                d.box_upper_[i] += b.radius;
            }
        }
        void operator()(const LShape&) const {
            d.dim_ = 2;
            d.volume_ = 3.0;
            d.bounding_radius_ = std::sqrt(2.0);
            d.centroid_ = {0.0, 0.0};
            d.box_lower_ = {-1.0, -1.0};
            d.box_upper_ = {1.0, 1.0};
        }
        void operator()(const PolarStar& s) const {
            d.dim_ = 2;
            double bound = s.base;
            for (const auto& m : s.sine) bound += std::abs(m.amplitude);
            for (const auto& m : s.cosine) bound += std::abs(m.amplitude);
            for (int i = 0; i < 100000; ++i) {
                if (!(s.boundary_radius(kTwoPi * i / 100000) > 0.0))
                    throw ConfigError("polar_star: R(theta) must stay positive");
            }
            d.volume_ = star_area(s);
            d.bounding_radius_ = bound;
            d.centroid_ = {0.0, 0.0};
            d.box_lower_ = {-bound, -bound};
            d.box_upper_ = {bound, bound};
        }
        void operator()(const HyperRectangle& h) const {
            d.dim_ = static_cast<int>(h.lower.size());
            if (d.dim_ < 2 || h.upper.size() != h.lower.size())
                throw ConfigError("hyper_rectangle: bounds must share a dimension of at least 2");
            d.volume_ = 1.0;
            double half_diag2 = 0.0;
            d.centroid_.resize(h.lower.size());
            for (std::size_t i = 0; i < h.lower.size(); ++i) {
                const double w = h.upper[i] - h.lower[i];
                if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("hyper_rectangle: need lower < upper");
                d.volume_ *= w;
                half_diag2 += 0.25 * w * w;
                d.centroid_[i] = 0.5 * (h.lower[i] + h.upper[i]);
            }
            d.bounding_radius_ = std::sqrt(half_diag2);
            d.box_lower_ = h.lower;
            d.box_upper_ = h.upper;
        }
    };
    std::visit(Setup{*this}, shape_);
}

Domain Domain::unit_ball(int dim) {
    if (dim < 2) throw ConfigError("ball: dimension must be at least 2");
    return Domain(Ball{Point(static_cast<std::size_t>(dim), 0.0), 1.0});
}

Domain Domain::l_shape() { return Domain(LShape{}); }

Domain Domain::hailstone() { return Domain(PolarStar{1.0, {{6, 0.9}}, {{10, 0.1}}}); }

std::string Domain::kind() const {
    struct Name {
        std::string operator()(const Ball&) const { return "ball"; }
        std::string operator()(const LShape&) const { return "l_shape"; }
        std::string operator()(const PolarStar&) const { return "polar_star"; }
        std::string operator()(const HyperRectangle&) const { return "hyper_rectangle"; }
    };
    return std::visit(Name{}, shape_);
}

bool Domain::contains(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(dim_)) {
        std::ostringstream os;
        os << "contains: point " << describe_point(x) << " has dimension " << x.size() << ", domain has " << dim_;
        throw UsageError(os.str());
    }
    return contains_unchecked(x);
}

bool Domain::contains_unchecked(std::span<const double> x) const noexcept {
    struct Test {
        std::span<const double> x;

        bool operator()(const Ball& b) const {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - b.center[i];
                d2 += d * d;
            }
            return d2 < b.radius * b.radius;
        }
        bool operator()(const LShape&) const {
            const bool square = x[0] > -1.0 && x[0] < 1.0 && x[1] > -1.0 && x[1] < 1.0;
            return square && !(x[0] >= 0.0 && x[1] >= 0.0);
        }
        bool operator()(const PolarStar& s) const {
            const double rho = std::hypot(x[0], x[1]);
            if (!std::isfinite(rho)) return false;
            return rho < s.boundary_radius(std::atan2(x[1], x[0]));
        }
        bool operator()(const HyperRectangle& h) const {
            for (std::size_t i = 0; i < x.size(); ++i)
                if (!(x[i] > h.lower[i] && x[i] < h.upper[i])) return false;
            return true;
        }
    };
    return std::visit(Test{x}, shape_);
}

namespace {

bool same_shape(const Ball& a, const Ball& b) { return a.center == b.center && a.radius == b.radius; }
bool same_shape(const LShape&, const LShape&) { return true; }
bool same_shape(const PolarStar& a, const PolarStar& b) {
    const auto eq = [](const std::vector<PolarStar::Mode>& u, const std::vector<PolarStar::Mode>& v) {
        return std::equal(u.begin(), u.end(), v.begin(), v.end(),
                          [](const auto& p, const auto& q) { return p.k == q.k && p.amplitude == q.amplitude; });
    };
    return a.base == b.base && eq(a.sine, b.sine) && eq(a.cosine, b.cosine);
}
bool same_shape(const HyperRectangle& a, const HyperRectangle& b) { return a.lower == b.lower && a.upper == b.upper; }

}  // namespace

bool operator==(const Domain& a, const Domain& b) {
    if (a.shape().index() != b.shape().index()) return false;
    return std::visit(
        [&](const auto& sa) {
            using T = std::decay_t<decltype(sa)>;
            return same_shape(sa, std::get<T>(b.shape()));
        },
        a.shape());
}

std::vector<Point> sample_interior_points(const Domain& domain, std::size_t count, RngStream& rng) {
    if (count == 0) throw UsageError("sample_interior_points: count must be at least 1");
    const auto n = static_cast<std::size_t>(domain.dim());
    std::vector<Point> points;
    points.reserve(count);

    if (const auto* ball = std::get_if<Ball>(&domain.shape()); ball && n > 10) {
        Point dir(n);
        while (points.size() < count) {
            wos::fill_unit_direction(dir, rng);
            const double rho = ball->radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
            Point p(n);
            for (std::size_t i = 0; i < n; ++i) p[i] = ball->center[i] + rho * dir[i];
            if (domain.contains_unchecked(p)) points.push_back(std::move(p));
        }
        return points;
    }

    const Point& lo = domain.box_lower();
    const Point& hi = domain.box_upper();
    std::size_t attempts = 0;
    Point p(n);
    while (points.size() < count) {
        for (std::size_t i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
        ++attempts;
        if (domain.contains_unchecked(p)) points.push_back(p);
        if (attempts >= 100000 && static_cast<double>(points.size()) < 1e-4 * static_cast<double>(attempts)) {
            std::ostringstream os;
            os << "sample_interior_points: acceptance rate below 1e-4 for " << domain.kind() << " in dimension " << n;
            throw ConfigError(os.str());
        }
    }
    return points;
}

}  // namespace frackac::geometry
