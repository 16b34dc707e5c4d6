#include "frackac/stable.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "frackac/errors.hpp"

namespace frackac::stable {

namespace {

void check_beta(double beta, bool allow_one, const char* where) {
    const bool ok = allow_one ? (beta > 0.0 && beta <= 1.0) : (beta > 0.0 && beta < 1.0);
    if (!ok) {
        std::ostringstream os;
        os << where << ": beta = " << beta << " outside " << (allow_one ? "(0, 1]" : "(0, 1)");
        throw DomainError(os.str());
    }
}

}  // namespace

double sample_log_one_sided_stable(double beta, RngStream& rng) {
    check_beta(beta, false, "sample_one_sided_stable");
    // Kanter: η = sin(βU)/sin(U)^{1/β} · (sin((1-β)U)/E)^{(1-β)/β}.
    const double u = std::numbers::pi * rng.uniform();
    const double e = rng.exponential();
    return std::log(std::sin(beta * u)) - std::log(std::sin(u)) / beta +
           (1.0 - beta) / beta * (std::log(std::sin((1.0 - beta) * u)) - std::log(e));
}

double sample_one_sided_stable(double beta, RngStream& rng) {
    return std::exp(sample_log_one_sided_stable(beta, rng));
}

Subordinator::Subordinator(double beta, double dt) : beta_(beta), dt_(dt), log_scale_(0.0) {
    check_beta(beta, true, "Subordinator");
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        std::ostringstream os;
        os << "Subordinator: dt = " << dt << " must be positive";
        throw DomainError(os.str());
    }
    log_scale_ = std::log(dt) / beta;
}

double Subordinator::advance(double previous, std::size_t index, RngStream& rng) const {
    if (beta_ == 1.0) return static_cast<double>(index) * dt_;
    const double step = std::exp(log_scale_ + sample_log_one_sided_stable(beta_, rng));
    // An increment below one ulp of the running value would stall the path.
    const double next = previous + step;
    return next > previous ? next : std::nextafter(previous, HUGE_VAL);
}

SubordinatorPath subordinator_path(double beta, double dt, double t, RngStream& rng) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << "subordinator_path: t = " << t << " must be positive";
        throw DomainError(os.str());
    }
    const Subordinator sub(beta, dt);
    SubordinatorPath path;
    path.dt = dt;
    path.values.push_back(0.0);
    while (path.values.back() < t) {
        const std::size_t i = path.values.size();
        path.values.push_back(sub.advance(path.values.back(), i, rng));
    }
    path.stop_index = path.values.size() - 1;
    return path;
}

}  // namespace frackac::stable
