// SPDX-License-Identifier: Apache-2.0
#include "partsim/calibrate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "partsim/special_sums.hpp"

namespace partsim {

double gamma_squared_closed_form(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::geom_power: return spec.r * dilog(spec.rho);
        case Family::binomial: return -static_cast<double>(spec.m) * dilog(-spec.rho);
        case Family::exp_rational:
            if (spec.rho == 0.0) return spec.b;
            if (spec.rho == 1.0) return std::numeric_limits<double>::infinity();
            return -spec.b * std::log1p(-spec.rho) / spec.rho;
        case Family::exp_power:
            if (spec.rho == 1.0) {
                if (spec.r >= 1.0) return std::numeric_limits<double>::infinity();
                return 1.0 / (1.0 - spec.r);
            }
            return (1.0 - std::pow(1.0 - spec.rho, 1.0 - spec.r)) / (spec.rho * (1.0 - spec.r));
        case Family::exp_polynomial: {
            if (spec.rho == 0.0) return 1.0;  // H0(u) = u
            return (std::pow(1.0 + spec.rho, static_cast<double>(spec.m)) - 1.0) /
                   (spec.rho * spec.m);
        }
        default: return std::numeric_limits<double>::quiet_NaN();
    }
}

Calibration calibrate(const EnsembleSpec& spec, long long n, double tol) {
    spec.validate();
    if (n < 1) throw DomainError("calibrate: n must be positive");
    const double th = dirichlet_threshold(spec);
    if (!(th < 1.0)) {
        std::ostringstream os;
        os << "calibrate: A+(1) diverges for " << spec.describe()
           << " (finite only for sigma > " << th << ")";
        throw DivergenceError(os.str());
    }

    const double closed = gamma_squared_closed_form(spec);
    const double g2_int = gamma_integral(spec, std::min(tol, 1e-10));
    const double g2 = std::isnan(closed) ? g2_int : closed;

    // two independent routes must agree
    if (std::fabs(g2 - g2_int) > tol * std::fabs(g2) + 1e-9)
        throw NumericsError("calibrate: closed-form and quadrature gamma^2 disagree for " +
                            spec.describe());

    // Dirichlet partial-sum cross-check: the partial sum must sit within its
    // own certified tail band of gamma^2. For heavy log-ratio tails the band
    // is coarse but the check is still two-sided and rigorous.
    {
        const long long K = spec.family == Family::log_ratio ? 4096 : (1 << 16);
        const auto a = log_coeff_prefix(spec, K);
        long double partial = 0;
        for (long long k = 1; k <= K; ++k) partial += a[k] / static_cast<long double>(k);
        const double band = log_coeff_tail(spec, K, 1.0);
        if (std::fabs(static_cast<double>(partial) - g2) > band + tol * std::fabs(g2) + 1e-12)
            throw NumericsError("calibrate: Dirichlet series cross-check failed for " +
                                spec.describe());
    }

    Calibration cal;
    cal.n = n;
    cal.gamma = std::sqrt(g2);
    cal.alpha = cal.gamma / std::sqrt(static_cast<double>(n));
    cal.z = std::exp(-cal.alpha);
    return cal;
}

namespace {

// shared series evaluator: sum_k k^q a_k S_{q+1}(k alpha) with certified tail
double total_cumulant_series(const EnsembleSpec& spec, double z, int q, double tol) {
    if (!(z > 0 && z < 1)) throw DomainError("cumulant series: z must be in (0,1)");
    if (q < 1) throw DomainError("cumulant series: q must be >= 1");
    const double th = dirichlet_threshold(spec);
    if (!(th < 1.0))
        throw DivergenceError("cumulant series diverges: A+(1) = inf for " + spec.describe());
    const double alpha = -std::log(z);
    const double ctil = sq_uniform_constant(q + 1);
    const long long cap = spec.family == Family::log_ratio ? (1 << 15) : (1 << 22);

    long long K = 256;
    while (true) {
        // tail: |a_k| k^q S_{q+1}(k alpha) <= C~ alpha^-(q+1) |a_k| / k
        const double tail =
            ctil * std::pow(alpha, -(q + 1.0)) * log_coeff_tail(spec, K, 1.0);
        if (tail <= tol) break;
        if (K >= cap) {
            std::ostringstream os;
            os << "cumulant series: cannot certify tail < " << tol << " for " << spec.describe()
               << " (q = " << q << ", certified " << tail << ")";
            throw NumericsError(os.str());
        }
        K *= 2;
    }
    const auto a = log_coeff_prefix(spec, K);
    long double s = 0;
    for (long long k = 1; k <= K; ++k) {
        if (a[k] == 0.0) continue;
        const double t = k * alpha;
        if (t > 745.0) break;  // e^-t underflows; later terms are smaller still
        s += std::pow(static_cast<long double>(k), q) * a[k] * sq_eval(q + 1, t);
    }
    return static_cast<double>(s);
}

}  // namespace

double expected_total(const EnsembleSpec& spec, double z, double tol) {
    return total_cumulant_series(spec, z, 1, tol);
}

double cumulant_total(const EnsembleSpec& spec, double z, int q, double tol) {
    return total_cumulant_series(spec, z, q, tol);
}

double profile_cumulant(const EnsembleSpec& spec, double z, int q, double x_cells, double tol) {
    spec.validate();
    if (!(z > 0 && z < 1)) throw DomainError("profile_cumulant: z must be in (0,1)");
    if (q < 1) throw DomainError("profile_cumulant: q must be >= 1");
    if (!(x_cells >= 0)) throw DomainError("profile_cumulant: x must be >= 0");
    const double alpha = -std::log(z);
    const long long lstar = std::max<long long>(1, static_cast<long long>(std::ceil(x_cells)));
    const double one_minus_z = -std::expm1(-alpha);
    const double w = std::exp(-alpha * static_cast<double>(lstar));
    if (w == 0.0) return 0.0;  // x so large that every term underflows
    const long long cap = spec.family == Family::log_ratio ? (1 << 15) : (1 << 22);

    long long K = 256;
    while (true) {
        // sum_{l>=lstar} z^{kl} = z^{k lstar}/(1-z^k) <= w^k / (1-z)
        const double tail = weighted_coeff_tail(spec, K, q, w) / one_minus_z;
        if (tail <= tol) break;
        if (K >= cap)
            throw NumericsError("profile_cumulant: cannot certify tail < " +
                                std::to_string(tol) + " for " + spec.describe());
        K *= 2;
    }
    const auto a = log_coeff_prefix(spec, K);
    long double s = 0;
    for (long long k = 1; k <= K; ++k) {
        if (a[k] == 0.0) continue;
        const double ka = k * alpha;
        const double num = std::exp(-ka * static_cast<double>(lstar));
        if (num == 0.0) break;
        const double den = -std::expm1(-ka);
        s += std::pow(static_cast<long double>(k), q) * a[k] * (num / den);
    }
    return static_cast<double>(s);
}

LyapunovBounds lyapunov_bounds(const EnsembleSpec& spec, double z, double tol) {
    spec.validate();
    if (!(z > 0 && z < 1)) throw DomainError("lyapunov_bounds: z must be in (0,1)");
    if (!(dirichlet_threshold(spec) < 0.5))
        throw DivergenceError("lyapunov_bounds: A+(1/2) = inf for " + spec.describe());
    const double alpha = -std::log(z);

    const double kappa3 = cumulant_total(spec, z, 3, tol);
    const double sigma = std::sqrt(cumulant_total(spec, z, 2, tol));
    const double s3 = sigma * sigma * sigma;

    // cross term D = sum_{k,m} k|a_k| m^2 |a_m| S_4((k+m) alpha), truncated at
    // k, m <= K; tail bounded via (k+m)^4 >= k^(3/2) m^(5/2)
    const long long K = spec.family == Family::log_ratio ? 1024 : 4096;
    const auto a = log_coeff_prefix(spec, K);
    std::vector<double> s4row(2 * K + 1, 0.0);
    for (long long s = 2; s <= 2 * K; ++s) {
        const double t = s * alpha;
        s4row[s] = t > 745.0 ? 0.0 : sq_eval(4, t);
    }
    long double d = 0;
    for (long long k = 1; k <= K; ++k) {
        if (a[k] == 0.0) continue;
        const long double kk = std::fabs(a[k]) * static_cast<long double>(k);
        for (long long m = 1; m <= K; ++m) {
            if (a[m] == 0.0) continue;
            d += kk * std::fabs(a[m]) * static_cast<long double>(m) * m * s4row[k + m];
        }
    }
    // any finite upper bound on A+(1/2) is good enough for the tail estimate
    long double ahalf = log_coeff_tail(spec, K, 0.5);
    for (long long k = 1; k <= K; ++k)
        ahalf += std::fabs(a[k]) / std::sqrt(static_cast<long double>(k));
    const double tail_half = log_coeff_tail(spec, K, 0.5);
    const double ctil4 = sq_uniform_constant(4);
    const double dtail =
        ctil4 * std::pow(alpha, -4.0) * 2.0 * tail_half * static_cast<double>(ahalf);

    LyapunovBounds b;
    b.lower = kappa3 / s3;
    b.upper = (kappa3 + 2.0 * (static_cast<double>(d) + dtail)) / s3;
    return b;
}

}  // namespace partsim
