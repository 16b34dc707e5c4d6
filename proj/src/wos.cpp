#include "frackac/wos.hpp"

#include <cmath>
#include <sstream>

#include "frackac/errors.hpp"

namespace frackac::wos {

namespace {

void check_alpha(double alpha, const char* where) {
    if (!(alpha > 0.0 && alpha <= 2.0)) {
        std::ostringstream os;
        os << where << ": alpha = " << alpha << " outside (0, 2]";
        throw DomainError(os.str());
    }
}

void check_dim(int dim, const char* where) {
    if (dim < 2) {
        std::ostringstream os;
        os << where << ": dimension " << dim << " must be at least 2";
        throw DomainError(os.str());
    }
}

}  // namespace

double exit_time_constant(double alpha, int dim) {
    check_alpha(alpha, "exit_time_constant");
    check_dim(dim, "exit_time_constant");
    const double n = dim;
    return std::exp(specfun::log_gamma(0.5 * n) - alpha * std::log(2.0) -
                    specfun::log_gamma(1.0 + 0.5 * alpha) - specfun::log_gamma(0.5 * (n + alpha)));
}

double ball_radius(double alpha, int dim, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        std::ostringstream os;
        os << "ball_radius: dt = " << dt << " must be positive";
        throw DomainError(os.str());
    }
    return std::pow(dt / exit_time_constant(alpha, dim), 1.0 / alpha);
}

JumpLaw::JumpLaw(double alpha) : alpha_(alpha) {
    check_alpha(alpha, "JumpLaw");
    if (alpha < 2.0) law_.emplace(0.5 * alpha, 1.0 - 0.5 * alpha);
}

double JumpLaw::scaled_distance(double omega) const {
    if (!(omega > 0.0 && omega < 1.0)) {
        std::ostringstream os;
        os << "sample_jump_radius: omega = " << omega << " outside (0, 1)";
        throw DomainError(os.str());
    }
    if (!law_) return 1.0;
    return std::exp(-0.5 * (*law_)(omega).log_x);
}

double sample_jump_radius(double alpha, double radius, double omega) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        std::ostringstream os;
        os << "sample_jump_radius: radius = " << radius << " must be positive";
        throw DomainError(os.str());
    }
    check_alpha(alpha, "sample_jump_radius");
    if (!(omega > 0.0 && omega < 1.0)) {
        std::ostringstream os;
        os << "sample_jump_radius: omega = " << omega << " outside (0, 1)";
        throw DomainError(os.str());
    }
    if (alpha == 2.0) return radius;
    const specfun::IncompleteBeta law(0.5 * alpha, 1.0 - 0.5 * alpha);
    const double scaled = std::exp(-0.5 * law.inverse(omega).log_x);
    return std::max(radius, std::min(radius * scaled, kMaxJump));
}

void fill_unit_direction(std::span<double> out, RngStream& rng) {
    check_dim(static_cast<int>(out.size()), "sample_unit_direction");
    for (;;) {
        double norm2 = 0.0;
        for (double& c : out) {
            c = rng.normal();
            norm2 += c * c;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& c : out) c *= inv;
            return;
        }
    }
}

std::vector<double> sample_unit_direction(int dim, RngStream& rng) {
    check_dim(dim, "sample_unit_direction");
    std::vector<double> d(static_cast<std::size_t>(dim));
    fill_unit_direction(d, rng);
    return d;
}

WosParams make_wos_params(double alpha, int dim, double dt) {
    WosParams p;
    p.alpha = alpha;
    p.dim = dim;
    p.dt = dt;
    p.radius = ball_radius(alpha, dim, dt);
    p.jump = JumpLaw(alpha);
    return p;
}

double advance(std::span<double> position, const WosParams& params, RngStream& rng,
               std::span<double> direction) {
    if (position.size() != static_cast<std::size_t>(params.dim) || direction.size() != position.size())
        throw UsageError("wos advance: position dimension does not match the walk parameters");
    const double j =
        std::max(params.radius, std::min(params.radius * params.jump.scaled_distance(rng.uniform()), kMaxJump));
    fill_unit_direction(direction, rng);
    for (std::size_t k = 0; k < position.size(); ++k) position[k] += j * direction[k];
    return j;
}

SpatialState wos_step(const SpatialState& state, const WosParams& params, RngStream& rng) {
    SpatialState next{state.position, state.step_index + 1};
    std::vector<double> direction(next.position.size());
    advance(next.position, params, rng, direction);
    return next;
}

}  // namespace frackac::wos
