#include "frackac/problems.hpp"

#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "frackac/errors.hpp"
#include "frackac/rng.hpp"
#include "frackac/specfun.hpp"
#include "frackac/wos.hpp"

namespace frackac::problems {

namespace {

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return s;
}

// (1 - |x|²)₊^{α/2}
double bump(double alpha, std::span<const double> x) {
    const double s = 1.0 - norm2(x);
    return s > 0.0 ? std::pow(s, 0.5 * alpha) : 0.0;
}

double example3_scale(double alpha) {
    return std::exp(alpha * std::numbers::ln2 + specfun::log_gamma(0.5 * (alpha + 7.0)) +
                    specfun::log_gamma(0.5 * (alpha + 2.0)) - specfun::log_gamma(3.5));
}

void check_horizon(double horizon, const char* where) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        std::ostringstream os;
        os << where << ": horizon T = " << horizon << " must be positive";
        throw DomainError(os.str());
    }
}

}  // namespace

void FractionalOrders::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0 && beta <= 1.0)) {
        std::ostringstream os;
        os << "fractional orders (alpha = " << alpha << ", beta = " << beta
           << ") outside alpha in (0, 2], beta in (0, 1]";
        throw DomainError(os.str());
    }
}

Problem example1(double alpha, double beta, int dim, double horizon) {
    const FractionalOrders orders{alpha, beta};
    orders.validate();
    check_horizon(horizon, "example1");
    // 2^α Γ(1+α/2) Γ((n+α)/2) / Γ(n/2) is the reciprocal of the exit-time constant.
    const double image = 1.0 / wos::exit_time_constant(alpha, dim);
    const double caputo = specfun::gamma(beta + 1.0);

    Problem p{"example1", orders, geometry::Domain::unit_ball(dim), horizon, {}, {}, {}, {}};
    p.u0 = [](std::span<const double>) { return 0.0; };
    p.g = [](double, std::span<const double>) { return 0.0; };
    p.f = [=](double t, std::span<const double> x) {
        const double s = std::max(t, 0.0);
        return caputo * bump(alpha, x) + std::pow(s, beta) * image;
    };
    p.exact = [=](double t, std::span<const double> x) { return std::pow(t, beta) * bump(alpha, x); };
    return p;
}

Problem example2(double alpha, double beta, double horizon) {
    const FractionalOrders orders{alpha, beta};
    orders.validate();
    check_horizon(horizon, "example2");
    if (std::pow(horizon, beta) > -specfun::MittagLeffler::kMinArgument) {
        std::ostringstream os;
        os << "example2: T^beta = " << std::pow(horizon, beta) << " exceeds the Mittag-Leffler range 5";
        throw DomainError(os.str());
    }
    const auto ml = std::make_shared<const specfun::MittagLeffler>(beta);
    const double g1 = specfun::gamma(1.0 + 0.5 * alpha);
    const double image = std::pow(2.0, alpha) * g1 * g1;

    Problem p{"example2", orders, geometry::Domain::unit_ball(2), horizon, {}, {}, {}, {}};
    p.u0 = [=](std::span<const double> x) { return bump(alpha, x); };
    p.g = [](double, std::span<const double>) { return 0.0; };
    p.f = [=](double t, std::span<const double> x) {
        const double e = (*ml)(-std::pow(std::max(t, 0.0), beta));
        return -e * bump(alpha, x) + e * image;
    };
    p.exact = [=](double t, std::span<const double> x) { return (*ml)(-std::pow(t, beta)) * bump(alpha, x); };
    return p;
}

double example3_spatial_image(double alpha, double norm2) {
    return example3_scale(alpha) * specfun::gauss_2f1(0.5 * (2.0 + alpha), 0.5 * (7.0 + alpha), 1.0, -norm2);
}

Problem example3(double alpha, double beta, double horizon) {
    const FractionalOrders orders{alpha, beta};
    orders.validate();
    check_horizon(horizon, "example3");
    constexpr double a = kExample3TimeExponent;
    const double caputo = specfun::gamma(a + 1.0) / specfun::gamma(a + 1.0 - beta);
    const double scale = example3_scale(alpha);
    const double ha = 0.5 * (2.0 + alpha);
    const double hb = 0.5 * (7.0 + alpha);
    const auto profile = [](std::span<const double> x) { return std::pow(1.0 + norm2(x), -3.5); };
    const auto exact = [=](double t, std::span<const double> x) { return std::pow(t, a) * profile(x); };

    Problem p{"example3", orders, geometry::Domain::l_shape(), horizon, {}, {}, {}, {}};
    p.u0 = [](std::span<const double>) { return 0.0; };
    p.g = [=](double t, std::span<const double> y) { return exact(std::max(t, 0.0), y); };
    p.f = [=](double t, std::span<const double> x) {
        const double s = std::max(t, 0.0);
        const double r2 = norm2(x);
        return caputo * std::pow(s, a - beta) * std::pow(1.0 + r2, -3.5) +
               scale * std::pow(s, a) * specfun::gauss_2f1(ha, hb, 1.0, -r2);
    };
    p.exact = exact;
    return p;
}

double hashed_initial_value(std::span<const double> x) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (double c : x) h = mix64(h ^ std::bit_cast<std::uint64_t>(c == 0.0 ? 0.0 : c));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    return -2.0 + u;
}

Problem example4(double alpha, double beta, double horizon) {
    return example4(alpha, beta, horizon, geometry::Domain::hailstone());
}

Problem example4(double alpha, double beta, double horizon, geometry::Domain domain) {
    const FractionalOrders orders{alpha, beta};
    orders.validate();
    check_horizon(horizon, "example4");
    if (domain.dim() != 2) throw DomainError("example4: the domain must be two-dimensional");

    Problem p{"example4", orders, std::move(domain), horizon, {}, {}, {}, {}};
    p.u0 = [](std::span<const double> x) { return hashed_initial_value(x); };
    p.g = [](double, std::span<const double>) { return 0.0; };
    p.f = [](double t, std::span<const double> x) {
        constexpr double pi = std::numbers::pi;
        const double s = std::max(t, 0.0);
        const double x1 = x[0];
        const double x2 = x[1];
        return std::cos(s) / (1.0 + 10.0 * s * s) *
               (std::cos(pi / 3.0 * x1 * x1 - x1 * x2) + std::sin(pi / 6.0 * x2 * x2 + x1 * x2));
    };
    return p;
}

}  // namespace frackac::problems
