// SPDX-License-Identifier: Apache-2.0
#include "partsim/special_sums.hpp"

#include <cmath>
#include <mutex>

#include "partsim/quadrature.hpp"

namespace partsim {

SqCoeffTable sq_table(int q) {
    if (q < 1) throw DomainError("sq_table: q must be >= 1");
    if (q > 20) throw DomainError("sq_table: q > 20 not supported (factorial overflow)");
    std::vector<double> c{1.0};  // q = 1
    for (int cur = 1; cur < q; ++cur) {
        std::vector<double> next(cur + 1);
        next[0] = c[0];
        for (int j = 2; j <= cur; ++j) next[j - 1] = j * c[j - 1] + (j - 1) * c[j - 2];
        next[cur] = cur * c[cur - 1];
        c = std::move(next);
    }
    return {q, std::move(c)};
}

double sq_eval(int q, double t) {
    if (q < 1) throw DomainError("sq_eval: q must be >= 1");
    if (!(t > 0)) throw DomainError("sq_eval: t must be positive");
    if (t > 30.0) {
        // closed form is fine here too, but the raw series needs only a
        // handful of terms and avoids the tiny (1-e^-t)^-j corrections
        double s = 0;
        for (int l = 1; l <= 64; ++l) {
            const double term = std::pow(static_cast<double>(l), q - 1) * std::exp(-t * l);
            s += term;
            if (term < s * 1e-18) break;
        }
        return s;
    }
    static std::mutex mu;
    static std::vector<SqCoeffTable> tables;  // tables[q-1]
    {
        std::lock_guard<std::mutex> lock(mu);
        while (static_cast<int>(tables.size()) < q) tables.push_back(sq_table(tables.size() + 1));
    }
    const auto& c = tables[q - 1].coeffs;
    const double em = -std::expm1(-t);  // 1 - e^-t, no cancellation
    const double x = std::exp(-t) / em;
    // sum c_{j,q} x^j via Horner on descending j
    double s = 0;
    for (int j = q; j >= 1; --j) s = (s + c[j - 1]) * x;
    return s;
}

double sq_envelope_constant(int q) {
    // coarse log-grid scan + golden-section refinement of f(t) = t^q e^-t (1-e^-t)^-q
    auto f = [q](double t) {
        return std::pow(t, q) * std::exp(-t) / std::pow(-std::expm1(-t), q);
    };
    double best_t = 1e-3, best = f(best_t);
    for (double t = 1e-3; t < 60.0; t *= 1.05) {
        const double v = f(t);
        if (v > best) best = v, best_t = t;
    }
    double lo = best_t / 1.1, hi = best_t * 1.1;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = x1, x1 = x2, f1 = f2;
            x2 = lo + gr * (hi - lo), f2 = f(x2);
        } else {
            hi = x2, x2 = x1, f2 = f1;
            x1 = hi - gr * (hi - lo), f1 = f(x1);
        }
    }
    return std::max(best, std::max(f1, f2)) * 1.0000001 + 1e-12;
}

double sq_uniform_constant(int q) {
    static std::mutex mu;
    static std::vector<double> cache;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) < q) {
        const int qq = static_cast<int>(cache.size()) + 1;
        const auto tab = sq_table(qq);
        double csum = 0;
        for (double c : tab.coeffs) csum += c;
        cache.push_back(sq_envelope_constant(qq) * csum);
    }
    return cache[q - 1];
}

double dilog(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError("dilog: x must lie in [-1, 1]");
    constexpr double pi2_6 = 1.6449340668482264365;
    if (x == 1.0) return pi2_6;
    if (x == -1.0) return -pi2_6 / 2.0;
    auto series = [](double y) {
        // |y| <= 1/2: converges geometrically
        double s = 0, p = y;
        for (int k = 1; k < 200; ++k) {
            const double term = p / (static_cast<double>(k) * k);
            s += term;
            p *= y;
            if (std::fabs(p) < 1e-18) break;
        }
        return s;
    };
    if (std::fabs(x) <= 0.5) return series(x);
    if (x > 0.5) {
        // Li2(x) + Li2(1-x) = pi^2/6 - ln(x) ln(1-x)
        return pi2_6 - std::log(x) * std::log1p(-x) - series(1.0 - x);
    }
    // x < -1/2: Landen, Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, with x/(x-1) in (0, 1/2]
    const double y = x / (x - 1.0);
    const double l = std::log1p(-x);
    return -series(y) - 0.5 * l * l;
}

namespace {

// H0(1 - em) computed from em = 1 - u directly, so that 1 - rho*u can be
// formed as (1 - rho) + rho*em without cancellation when u -> 1.
double h0_near_one(const EnsembleSpec& spec, double em) {
    const double one_minus_w = (1.0 - spec.rho) + spec.rho * em;
    const double u = 1.0 - em;
    switch (spec.family) {
        case Family::geom_power: return -spec.r * std::log(one_minus_w);
        case Family::binomial:
            return static_cast<double>(spec.m) * std::log((1.0 + spec.rho) - spec.rho * em);
        case Family::exp_rational: return spec.b * u / one_minus_w;
        case Family::exp_power: return u * std::exp(-spec.r * std::log(one_minus_w));
        case Family::exp_polynomial: {
            double p = 1;
            const double base = (1.0 + spec.rho) - spec.rho * em;
            for (long long j = 0; j < spec.m - 1; ++j) p *= base;
            return u * p;
        }
        case Family::log_ratio:
            return spec.r * std::log(-std::log(one_minus_w) / (spec.rho * u));
        case Family::raw: return h0_eval(spec, u);
    }
    throw DomainError("h0_near_one: invalid family");
}

}  // namespace

double gamma_integral(const EnsembleSpec& spec, double tol) {
    spec.validate();
    const double th = dirichlet_threshold(spec);
    if (!(th < 1.0))
        throw DivergenceError("gamma_integral: A+(1) = inf for " + spec.describe() +
                              " (Dirichlet threshold sigma > " + std::to_string(th) + ")");
    // [0, 1/2]: integrand u^-1 H0(u) is analytic (value a_1 at u = 0)
    auto g = [&spec](double u) { return h0_eval(spec, u) / u; };
    const double part1 = integrate(g, 0.0, 0.5, 0.25 * tol);
    // [1/2, 1): u = 1 - e^-v tames the endpoint; integrand decays like
    // poly(v) e^-v for every admissible family
    auto gv = [&spec](double v) {
        const double em = std::exp(-v);
        return h0_near_one(spec, em) * em / (1.0 - em);
    };
    const double vmax = 60.0;  // e^-60 ~ 9e-27 leaves no measurable tail
    const double part2 = integrate(gv, std::log(2.0), vmax, 0.25 * tol);
    return part1 + part2;
}

}  // namespace partsim
