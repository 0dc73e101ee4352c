// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "partsim/errors.hpp"

namespace partsim {

// Regularized incomplete gamma P(a,x), Q(a,x) via series / continued
// fraction (Numerical Recipes style). Enough accuracy for p-values.
inline double gamma_p(double a, double x) {
    if (x < 0 || a <= 0) throw DomainError("gamma_p: bad arguments");
    if (x == 0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // series
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q, return 1-Q
    double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

// Upper tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double stat, double df) {
    if (df <= 0) throw DomainError("chi_square_pvalue: df must be positive");
    return gamma_q(0.5 * df, 0.5 * stat);
}

// Pearson chi-square p-value of observed counts against expected counts.
// Categories with tiny expectation are pooled into their neighbor.
inline double chi_square_gof_pvalue(const std::vector<double>& observed,
                                    const std::vector<double>& expected,
                                    double min_expected = 5.0) {
    double stat = 0, obs_pool = 0, exp_pool = 0;
    int df = -1;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        obs_pool += observed[i];
        exp_pool += expected[i];
        if (exp_pool >= min_expected) {
            const double d = obs_pool - exp_pool;
            stat += d * d / exp_pool;
            ++df;
            obs_pool = exp_pool = 0;
        }
    }
    if (exp_pool > 0) {  // trailing pool
        const double d = obs_pool - exp_pool;
        stat += d * d / exp_pool;
        ++df;
    }
    if (df < 1) return 1.0;
    return chi_square_pvalue(stat, df);
}

// Two-sample chi-square homogeneity test over shared categories.
inline double chi_square_two_sample_pvalue(const std::vector<double>& a,
                                           const std::vector<double>& b) {
    double na = 0, nb = 0;
    for (double v : a) na += v;
    for (double v : b) nb += v;
    if (na == 0 || nb == 0) return 1.0;
    double stat = 0;
    int cats = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tot = a[i] + b[i];
        if (tot == 0) continue;
        const double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
        ++cats;
    }
    if (cats < 2) return 1.0;
    return chi_square_pvalue(stat, cats - 1);
}

}  // namespace partsim
