// SPDX-License-Identifier: Apache-2.0
#include "partsim/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace partsim {

double Profile::operator()(double x) const {
    if (xs.empty()) return 0.0;
    // first jump location >= x carries the value at x
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return 0.0;
    return ys[static_cast<std::size_t>(it - xs.begin())];
}

double Profile::area() const {
    double a = 0, prev = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        a += ys[i] * (xs[i] - prev);
        prev = xs[i];
    }
    return a;
}

Profile profile(const Partition& p) {
    Profile pr;
    pr.source_n = 1;
    pr.xs.reserve(p.counts.size());
    pr.ys.reserve(p.counts.size());
    // Y on (l_{i-1}, l_i] equals the count of parts >= l_i
    long long suffix = 0;
    std::vector<std::pair<long long, long long>> items(p.counts.begin(), p.counts.end());
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        suffix += it->second;
        pr.xs.push_back(static_cast<double>(it->first));
        pr.ys.push_back(static_cast<double>(suffix));
    }
    std::reverse(pr.xs.begin(), pr.xs.end());
    std::reverse(pr.ys.begin(), pr.ys.end());
    return pr;
}

Profile scale(const Profile& prof, long long n) {
    if (n < 1) throw DomainError("scale: n must be positive");
    if (n == 1) return prof;
    Profile s = prof;
    const double root = std::sqrt(static_cast<double>(n));
    for (auto& x : s.xs) x /= root;
    for (auto& y : s.ys) y /= root;
    s.source_n = prof.source_n * static_cast<double>(n);
    return s;
}

namespace {

bool h0_infinite_at_one(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::geom_power:
        case Family::log_ratio: return spec.rho == 1.0;
        case Family::exp_rational:
        case Family::exp_power: return spec.rho == 1.0;
        default: return false;
    }
}

}  // namespace

double limit_shape(const EnsembleSpec& spec, double gamma, double x) {
    spec.validate();
    if (!(gamma > 0)) throw DomainError("limit_shape: gamma must be positive");
    if (!(x >= 0)) throw DomainError("limit_shape: x must be >= 0");
    if (x == 0.0 && h0_infinite_at_one(spec)) return std::numeric_limits<double>::infinity();
    const double u = std::exp(-gamma * x);
    const double w = spec.rho * u;
    switch (spec.family) {
        case Family::geom_power: return -spec.r / gamma * std::log1p(-w);
        case Family::binomial: return spec.m / gamma * std::log1p(w);
        case Family::exp_rational: return spec.b * u / (gamma * (1.0 - w));
        case Family::exp_power:
            return u / gamma * std::exp(-spec.r * std::log1p(-w));
        case Family::exp_polynomial: {
            double p = 1;
            for (long long j = 0; j < spec.m - 1; ++j) p *= (1.0 + w);
            return u * p / gamma;
        }
        case Family::log_ratio:
            // r/gamma * (gamma x - ln rho + ln(-ln(1 - rho e^(-gamma x))))
            return h0_eval(spec, u) / gamma;
        case Family::raw: return h0_eval(spec, u) / gamma;
    }
    throw DomainError("limit_shape: invalid family");
}

double sup_distance(const Profile& scaled, const EnsembleSpec& spec, double gamma, double delta,
                    double grid_step) {
    spec.validate();
    if (!(delta > 0)) throw DomainError("sup_distance: delta must be positive");
    if (!(grid_step > 0)) throw DomainError("sup_distance: grid_step must be positive");

    auto omega = [&](double x) { return limit_shape(spec, gamma, x); };
    double sup = 0;
    auto consider = [&](double x) {
        if (x < delta) return;
        const double w = omega(x);
        // both one-sided values of the step function matter at a jump
        sup = std::max(sup, std::fabs(scaled(x) - w));
        sup = std::max(sup, std::fabs(scaled(std::nextafter(x, 1e300)) - w));
    };

    consider(delta);
    for (double x : scaled.xs) consider(x);

    // between jumps the profile is constant and omega* monotone, so the
    // endpoints dominate; the grid is a safety net only
    const double x_last = scaled.xs.empty() ? 0.0 : scaled.xs.back();
    for (double x = delta; x <= x_last; x += grid_step) consider(x);

    // beyond the last jump the profile is 0 and omega* decreasing
    sup = std::max(sup, omega(std::max(delta, x_last)));
    return sup;
}

}  // namespace partsim
