#pragma once

// Real special functions used by the samplers, the manufactured problems and
// the test oracles. Every function is pure; failures throw (DomainError for
// bad arguments, NumericError for non-convergence) rather than returning a
// clamped value.

#include <vector>

namespace frackac::specfun {

/// Outcome of an iterative evaluation. A result with converged == false must
/// not be used; see value_or_throw().
struct SpecFunResult {
    double value = 0.0;
    bool converged = false;
    int terms_used = 0;
};

/// Returns r.value, or throws NumericError naming `what` if r did not converge.
double value_or_throw(const SpecFunResult& r, const char* what);

/// Euler gamma function for x > 0. Throws DomainError for x <= 0 and
/// NumericError when Γ(x) overflows a double (x > ~171.6).
double gamma(double x);

/// log Γ(x) for x > 0.
double log_gamma(double x);

/// 1/Γ(x) for any real x; zero at the poles 0, -1, -2, ...
double reciprocal_gamma(double x);

/// log B(a, b) = log Γ(a) + log Γ(b) - log Γ(a+b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1].
double reg_inc_beta(double x, double a, double b);

/// Quantile of the Beta(a, b) law carried with its logarithms so that values
/// far below the smallest double (small a) stay representable.
struct BetaQuantile {
    double x = 0.0;
    double log_x = 0.0;         ///< log(x), may be far below log(DBL_MIN)
    double log_one_minus_x = 0.0;
};

/// Incomplete-beta kernel bound to fixed shape parameters (a, b). Caches
/// log B(a, b) so repeated evaluations in sampling loops are cheap.
class IncompleteBeta {
public:
    IncompleteBeta(double a, double b);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double log_beta() const noexcept { return log_beta_; }

    /// I_x(a, b).
    double operator()(double x) const;

    /// log I_x(a, b) given log x; accurate even when x underflows.
    double log_value(double log_x) const;

    /// Solves I_x(a, b) = p. Newton iteration on log x (or log(1-x) in the
    /// upper tail), safeguarded by bisection on a shrinking bracket.
    BetaQuantile inverse(double p) const;

private:
    double a_;
    double b_;
    double log_beta_;
    double split_;    // a / (a + b); lower-tail solve below, upper above
    double p_split_;  // I_split(a, b)

    friend class BetaQuantileTable;
};

/// Repeated Beta(a, b) quantiles for sampling loops. Cubic Hermite tables in
/// log p (lower tail) and log(1 - p) (upper tail) supply a start value that a
/// single Newton step polishes. Arguments beyond the tables, or start values
/// needing a large correction, fall back to IncompleteBeta::inverse.
class BetaQuantileTable {
public:
    BetaQuantileTable(double a, double b, int nodes_per_tail = 1024);

    const IncompleteBeta& law() const noexcept { return law_; }

    BetaQuantile operator()(double p) const;

private:
    struct Tail {
        double s_min = 0.0;  // table covers log q in [s_min, s_max]
        double s_max = 0.0;
        double inv_step = 0.0;
        double step = 0.0;
        std::vector<double> t;      // log of the tail quantile
        std::vector<double> slope;  // dt / d log q
    };

    static Tail build(const IncompleteBeta& law, double q_max, int nodes);
    static bool lookup(const Tail& tail, const IncompleteBeta& law, double q, double& t);

    IncompleteBeta law_;
    IncompleteBeta mirror_;  // Beta(b, a), the law of 1 - x
    double p_split_;
    Tail lower_;
    Tail upper_;
};

/// x with I_x(a, b) = p.
double inv_reg_inc_beta(double p, double a, double b);

/// Gauss hypergeometric ₂F₁(a, b; c; z) restricted to z <= 0.
/// Uses a Pfaff transformation onto [0, 1) for moderate |z| and the
/// 1/z connection formula for large |z|.
SpecFunResult try_gauss_2f1(double a, double b, double c, double z);
double gauss_2f1(double a, double b, double c, double z);

/// Plain power series Σ (a)_k (b)_k / ((c)_k k!) z^k for |z| < 1.
SpecFunResult hypergeometric_series(double a, double b, double c, double z);

/// One-parameter Mittag-Leffler function E_β(z) = Σ z^k / Γ(βk + 1) on the
/// negative axis. Precomputes the series coefficients for a fixed β.
class MittagLeffler {
public:
    static constexpr double kMinArgument = -5.0;

    explicit MittagLeffler(double beta);

    double beta() const noexcept { return beta_; }

    /// E_β(z) for z in [kMinArgument, 0].
    double operator()(double z) const;

    /// Taylor part only (no fallback), exposed for cross-checks.
    SpecFunResult series(double z) const;

    /// Completely-monotone integral representation (β < 1 only).
    SpecFunResult integral(double z) const;

private:
    double beta_;
    std::vector<double> coeffs_;  // 1 / Γ(βk + 1)
};

/// E_β(z) for β in (0, 1] and z in [-5, 0].
double mittag_leffler(double beta, double z);

}  // namespace frackac::specfun
