// SPDX-License-Identifier: Apache-2.0
#include "partsim/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

namespace partsim {

namespace {

constexpr double kLogRatioEdge = 1e-9;  // open gap below the branch point u = 1/rho

double ipow(double base, long long e) {
    double r = 1, b = base;
    for (long long n = e; n > 0; n >>= 1) {
        if (n & 1) r *= b;
        b *= b;
    }
    return r;
}

// atilde_k for the log_ratio family, from the triangular system
//   k/(k+1) = sum_{j=1}^{k} atilde_j / (k-j+1)
// Forward substitution; results cached since the system is O(K^2).
const std::vector<double>& logratio_atilde(long long K) {
    static std::mutex mu;
    static std::vector<double> cache{0.0};  // index 0 unused
    std::lock_guard<std::mutex> lock(mu);
    for (long long k = static_cast<long long>(cache.size()); k <= K; ++k) {
        double s = static_cast<double>(k) / (k + 1);
        for (long long j = 1; j < k; ++j) s -= cache[j] / static_cast<double>(k - j + 1);
        cache.push_back(s);
    }
    return cache;
}

std::vector<Rat> logratio_atilde_exact(long long K) {
    std::vector<Rat> at(K + 1);
    for (long long k = 1; k <= K; ++k) {
        Rat s(k, k + 1);
        for (long long j = 1; j < k; ++j) s -= at[j] / Rat(k - j + 1);
        at[k] = s;
    }
    return at;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::geom_power: return "geom-power";
        case Family::binomial: return "binomial";
        case Family::exp_rational: return "exp-rational";
        case Family::exp_power: return "exp-power";
        case Family::exp_polynomial: return "exp-polynomial";
        case Family::log_ratio: return "log-ratio";
        case Family::raw: return "raw";
    }
    throw DomainError("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "geom-power") return Family::geom_power;
    if (name == "binomial") return Family::binomial;
    if (name == "exp-rational") return Family::exp_rational;
    if (name == "exp-power") return Family::exp_power;
    if (name == "exp-polynomial") return Family::exp_polynomial;
    if (name == "log-ratio") return Family::log_ratio;
    if (name == "raw") return Family::raw;
    throw DomainError("unknown family name: " + name);
}

EnsembleSpec EnsembleSpec::geom_power(double r, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::geom_power;
    s.r = r;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::binomial(long long m, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::binomial;
    s.m = m;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::exp_rational(double b, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::exp_rational;
    s.b = b;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::exp_power(double r, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::exp_power;
    s.r = r;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::exp_polynomial(long long m, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::exp_polynomial;
    s.m = m;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::log_ratio(double r, double rho, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::log_ratio;
    s.r = r;
    s.rho = rho;
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

EnsembleSpec EnsembleSpec::raw(std::vector<Rat> a, long long cutoff_k) {
    EnsembleSpec s;
    s.family = Family::raw;
    s.raw_coeffs = std::move(a);
    s.cutoff_k = cutoff_k;
    s.validate();
    return s;
}

void EnsembleSpec::validate() const {
    if (cutoff_k < 1) throw DomainError("cutoff_k must be positive");
    switch (family) {
        case Family::geom_power:
            if (!(r > 0)) throw DomainError("geom-power: r must be positive");
            if (!(rho > 0 && rho <= 1)) throw DomainError("geom-power: rho must be in (0,1]");
            return;
        case Family::binomial:
            if (m < 1) throw DomainError("binomial: m must be a positive integer");
            if (!(rho > 0 && rho <= 1)) throw DomainError("binomial: rho must be in (0,1]");
            return;
        case Family::exp_rational:
            if (!(b > 0)) throw DomainError("exp-rational: b must be positive");
            if (!(rho >= 0 && rho <= 1)) throw DomainError("exp-rational: rho must be in [0,1]");
            return;
        case Family::exp_power:
            if (!(r > 0)) throw DomainError("exp-power: r must be positive");
            if (r == 1.0) throw DomainError("exp-power: r = 1 is the exp-rational family");
            if (!(rho > 0 && rho <= 1)) throw DomainError("exp-power: rho must be in (0,1]");
            return;
        case Family::exp_polynomial:
            if (m < 1) throw DomainError("exp-polynomial: m must be a positive integer");
            if (!(rho >= 0 && rho <= 1)) throw DomainError("exp-polynomial: rho must be in [0,1]");
            return;
        case Family::log_ratio:
            if (!(r > 0)) throw DomainError("log-ratio: r must be positive");
            if (!(rho > 0 && rho <= 1)) throw DomainError("log-ratio: rho must be in (0,1]");
            return;
        case Family::raw: {
            if (raw_coeffs.empty()) throw DomainError("raw: coefficient list must be nonempty");
            for (const auto& a : raw_coeffs) {
                if (a != 0) {
                    if (a < 0)
                        throw DomainError("raw: first nonzero log coefficient must be positive");
                    return;
                }
            }
            throw DomainError("raw: all coefficients vanish");
        }
    }
    throw DomainError("invalid family");
}

std::string EnsembleSpec::describe() const {
    std::ostringstream os;
    os << family_name(family) << "(";
    switch (family) {
        case Family::geom_power:
        case Family::exp_power:
        case Family::log_ratio: os << "r=" << r << ", rho=" << rho; break;
        case Family::binomial:
        case Family::exp_polynomial: os << "m=" << m << ", rho=" << rho; break;
        case Family::exp_rational: os << "b=" << b << ", rho=" << rho; break;
        case Family::raw: os << raw_coeffs.size() << " coeffs"; break;
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// log coefficients a_k
// ---------------------------------------------------------------------------

double log_coeff(const EnsembleSpec& spec, long long k) {
    spec.validate();
    if (k < 1) throw DomainError("log_coeff: k must be >= 1");
    switch (spec.family) {
        case Family::geom_power:
            return spec.r * ipow(spec.rho, k) / static_cast<double>(k);
        case Family::binomial: {
            const double v = spec.m * ipow(spec.rho, k) / static_cast<double>(k);
            return (k % 2 == 1) ? v : -v;
        }
        case Family::exp_rational: return spec.b * ipow(spec.rho, k - 1);
        case Family::exp_power: {
            // binom(r+k-2, k-1) * rho^(k-1)
            double c = 1;
            for (long long j = 1; j < k; ++j) c *= spec.rho * (spec.r - 1 + j) / j;
            return c;
        }
        case Family::exp_polynomial: {
            if (k > spec.m) return 0.0;
            double c = 1;  // binom(m-1, k-1)
            for (long long j = 1; j < k; ++j) c *= spec.rho * static_cast<double>(spec.m - j) / j;
            return c;
        }
        case Family::log_ratio:
            return spec.r * ipow(spec.rho, k) * logratio_atilde(k)[k] / static_cast<double>(k);
        case Family::raw:
            if (k > static_cast<long long>(spec.raw_coeffs.size())) return 0.0;
            return rat_to_double(spec.raw_coeffs[k - 1]);
    }
    throw DomainError("log_coeff: invalid family");
}

std::vector<double> log_coeff_prefix(const EnsembleSpec& spec, long long K) {
    spec.validate();
    std::vector<double> a(K + 1, 0.0);
    switch (spec.family) {
        case Family::log_ratio: {
            const auto& at = logratio_atilde(K);
            double rk = 1;
            for (long long k = 1; k <= K; ++k) {
                rk *= spec.rho;
                a[k] = spec.r * rk * at[k] / static_cast<double>(k);
            }
            break;
        }
        case Family::exp_power: {
            double c = 1;
            for (long long k = 1; k <= K; ++k) {
                a[k] = c;
                c *= spec.rho * (spec.r - 1 + k) / k;
            }
            break;
        }
        default:
            for (long long k = 1; k <= K; ++k) a[k] = log_coeff(spec, k);
    }
    return a;
}

Rat log_coeff_exact(const EnsembleSpec& spec, long long k) {
    spec.validate();
    if (k < 1) throw DomainError("log_coeff_exact: k must be >= 1");
    const Rat r = rat_from_double(spec.r), rho = rat_from_double(spec.rho),
              b = rat_from_double(spec.b);
    switch (spec.family) {
        case Family::geom_power: return r * rat_pow(rho, k) / k;
        case Family::binomial: {
            Rat v = Rat(spec.m) * rat_pow(rho, k) / k;
            return (k % 2 == 1) ? v : -v;
        }
        case Family::exp_rational: return b * rat_pow(rho, k - 1);
        case Family::exp_power: return rat_binomial(r + (k - 2), k - 1) * rat_pow(rho, k - 1);
        case Family::exp_polynomial:
            if (k > spec.m) return 0;
            return rat_binomial(Rat(spec.m - 1), k - 1) * rat_pow(rho, k - 1);
        case Family::log_ratio: {
            auto at = logratio_atilde_exact(k);
            return r * rat_pow(rho, k) * at[k] / k;
        }
        case Family::raw:
            if (k > static_cast<long long>(spec.raw_coeffs.size())) return 0;
            return spec.raw_coeffs[k - 1];
    }
    throw DomainError("log_coeff_exact: invalid family");
}

std::vector<Rat> log_coeff_prefix_exact(const EnsembleSpec& spec, long long K) {
    spec.validate();
    std::vector<Rat> a(K + 1);
    if (spec.family == Family::log_ratio) {
        const Rat r = rat_from_double(spec.r), rho = rat_from_double(spec.rho);
        auto at = logratio_atilde_exact(K);
        Rat rk = 1;
        for (long long k = 1; k <= K; ++k) {
            rk *= rho;
            a[k] = r * rk * at[k] / k;
        }
        return a;
    }
    for (long long k = 1; k <= K; ++k) a[k] = log_coeff_exact(spec, k);
    return a;
}

// ---------------------------------------------------------------------------
// generating-function coefficients c_k
// ---------------------------------------------------------------------------

std::vector<double> gf_coeff_prefix(const EnsembleSpec& spec, long long K) {
    spec.validate();
    std::vector<double> c(K + 1, 0.0);
    c[0] = 1.0;
    switch (spec.family) {
        case Family::geom_power: {
            for (long long k = 1; k <= K; ++k)
                c[k] = c[k - 1] * spec.rho * (spec.r + k - 1) / k;
            return c;
        }
        case Family::binomial: {
            for (long long k = 1; k <= std::min<long long>(K, spec.m); ++k)
                c[k] = c[k - 1] * spec.rho * static_cast<double>(spec.m - k + 1) / k;
            return c;
        }
        default: {
            // c_k = (1/k) sum_{j=1..k} j a_j c_{k-j}
            const auto a = log_coeff_prefix(spec, K);
            for (long long k = 1; k <= K; ++k) {
                long double s = 0;
                for (long long j = 1; j <= k; ++j)
                    s += static_cast<long double>(j) * a[j] * c[k - j];
                c[k] = static_cast<double>(s / k);
            }
            return c;
        }
    }
}

double gf_coeff(const EnsembleSpec& spec, long long k) {
    if (k < 0) throw DomainError("gf_coeff: k must be >= 0");
    if (k == 0) return 1.0;
    return gf_coeff_prefix(spec, k)[k];
}

std::vector<Rat> gf_coeff_prefix_exact(const EnsembleSpec& spec, long long K) {
    spec.validate();
    std::vector<Rat> c(K + 1);
    c[0] = 1;
    const auto a = log_coeff_prefix_exact(spec, K);
    for (long long k = 1; k <= K; ++k) {
        Rat s = 0;
        for (long long j = 1; j <= k; ++j) s += Rat(j) * a[j] * c[k - j];
        c[k] = s / k;
    }
    return c;
}

Rat gf_coeff_exact(const EnsembleSpec& spec, long long k) {
    if (k < 0) throw DomainError("gf_coeff_exact: k must be >= 0");
    if (k == 0) return 1;
    return gf_coeff_prefix_exact(spec, k)[k];
}

// ---------------------------------------------------------------------------
// evaluation of H0, H0', F0
// ---------------------------------------------------------------------------

double convergence_radius(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::binomial:
        case Family::exp_polynomial:
        case Family::raw: return std::numeric_limits<double>::infinity();
        case Family::exp_rational:
            return spec.rho == 0 ? std::numeric_limits<double>::infinity() : 1.0 / spec.rho;
        default: return 1.0 / spec.rho;
    }
}

namespace {

void check_real_domain(const EnsembleSpec& spec, double u) {
    switch (spec.family) {
        case Family::geom_power:
        case Family::exp_power:
            if (!(spec.rho * std::fabs(u) < 1.0))
                throw DomainError("h0_eval: |u| outside convergence radius");
            return;
        case Family::exp_rational:
            if (spec.rho > 0 && !(spec.rho * std::fabs(u) < 1.0))
                throw DomainError("h0_eval: |u| outside convergence radius");
            return;
        case Family::binomial:
            if (!(1.0 + spec.rho * u > 0.0))
                throw DomainError("h0_eval: 1 + rho*u must be positive");
            return;
        case Family::exp_polynomial:
        case Family::raw: return;
        case Family::log_ratio:
            // branch point at rho*u = 1 is excluded with a small gap
            if (!(spec.rho * u <= 1.0 - kLogRatioEdge && spec.rho * std::fabs(u) < 1.0))
                throw DomainError("h0_eval: u too close to the log-ratio branch point");
            return;
    }
}

double horner_raw(const EnsembleSpec& spec, double u) {
    double s = 0;
    for (auto it = spec.raw_coeffs.rbegin(); it != spec.raw_coeffs.rend(); ++it)
        s = s * u + rat_to_double(*it);
    return s * u;
}

}  // namespace

double h0_eval(const EnsembleSpec& spec, double u) {
    spec.validate();
    check_real_domain(spec, u);
    const double w = spec.rho * u;
    switch (spec.family) {
        case Family::geom_power: return -spec.r * std::log1p(-w);
        case Family::binomial: return static_cast<double>(spec.m) * std::log1p(w);
        case Family::exp_rational: return spec.b * u / (1.0 - w);
        case Family::exp_power: return u * std::exp(-spec.r * std::log1p(-w));
        case Family::exp_polynomial:
            return u * ipow(1.0 + w, spec.m - 1);
        case Family::log_ratio: {
            if (std::fabs(w) < 1e-4) {
                // -ln(1-w)/w = 1 + w/2 + w^2/3 + ... ; log1p avoids cancellation
                const double g = w * (0.5 + w * (1.0 / 3 + w * (0.25 + w / 5)));
                return spec.r * std::log1p(g);
            }
            return spec.r * std::log(-std::log1p(-w) / w);
        }
        case Family::raw: return horner_raw(spec, u);
    }
    throw DomainError("h0_eval: invalid family");
}

std::complex<double> h0_eval(const EnsembleSpec& spec, std::complex<double> u) {
    spec.validate();
    using C = std::complex<double>;
    const double au = std::abs(u);
    const double radius = convergence_radius(spec);
    if (!(au < radius)) throw DomainError("h0_eval: |u| outside convergence radius");
    const C w = spec.rho * u;
    switch (spec.family) {
        case Family::geom_power: return -spec.r * std::log(C(1.0) - w);
        case Family::binomial: return static_cast<double>(spec.m) * std::log(C(1.0) + w);
        case Family::exp_rational:
            return spec.rho == 0 ? spec.b * u : spec.b * u / (C(1.0) - w);
        case Family::exp_power: return u * std::exp(-spec.r * std::log(C(1.0) - w));
        case Family::exp_polynomial: {
            C p = 1;
            for (long long j = 0; j < spec.m - 1; ++j) p *= (C(1.0) + w);
            return u * p;
        }
        case Family::log_ratio: {
            if (std::abs(w) < 1e-12) return C(0.0);
            if (std::abs(w) < 0.25) {
                C g = 0, term = w;
                for (int j = 1; j < 64; ++j) {
                    g += term / static_cast<double>(j + 1);
                    term *= w;
                    if (std::abs(term) < 1e-19) break;
                }
                return spec.r * std::log(C(1.0) + g);
            }
            return spec.r * std::log(-std::log(C(1.0) - w) / w);
        }
        case Family::raw: {
            C s = 0;
            for (auto it = spec.raw_coeffs.rbegin(); it != spec.raw_coeffs.rend(); ++it)
                s = s * u + rat_to_double(*it);
            return s * u;
        }
    }
    throw DomainError("h0_eval: invalid family");
}

double h0_deriv(const EnsembleSpec& spec, double u) {
    spec.validate();
    check_real_domain(spec, u);
    const double w = spec.rho * u;
    switch (spec.family) {
        case Family::geom_power: return spec.r * spec.rho / (1.0 - w);
        case Family::binomial: return static_cast<double>(spec.m) * spec.rho / (1.0 + w);
        case Family::exp_rational: return spec.b / ((1.0 - w) * (1.0 - w));
        case Family::exp_power:
            return std::exp(-(spec.r + 1) * std::log1p(-w)) * (1.0 - w + spec.r * w);
        case Family::exp_polynomial:
            if (spec.m == 1) return 1.0;
            return ipow(1.0 + w, spec.m - 2) * (1.0 + spec.rho * spec.m * u);
        case Family::log_ratio: {
            if (std::fabs(w) < 1e-3) {
                // f0'(w) = 1/2 + (2/3) w + (3/4) w^2 + (4/5) w^3 + ...
                const double fp = 0.5 + w * (2.0 / 3 + w * (0.75 + w * 0.8));
                const double f = 1.0 + w * (0.5 + w * (1.0 / 3 + w * 0.25));
                return spec.r * spec.rho * fp / f;
            }
            const double f = -std::log1p(-w) / w;
            const double fp = (1.0 / (1.0 - w) - f) / w;
            return spec.r * spec.rho * fp / f;
        }
        case Family::raw: {
            double s = 0, uk = 1;
            for (std::size_t k = 1; k <= spec.raw_coeffs.size(); ++k) {
                s += static_cast<double>(k) * rat_to_double(spec.raw_coeffs[k - 1]) * uk;
                uk *= u;
            }
            return s;
        }
    }
    throw DomainError("h0_deriv: invalid family");
}

double f0_eval(const EnsembleSpec& spec, double u) { return std::exp(h0_eval(spec, u)); }

// ---------------------------------------------------------------------------
// Dirichlet series machinery
// ---------------------------------------------------------------------------

double dirichlet_threshold(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::exp_rational: return spec.rho == 1.0 ? 1.0 : 0.0;
        case Family::exp_power: return spec.rho == 1.0 ? spec.r : 0.0;
        default: return 0.0;
    }
}

double log_coeff_tail(const EnsembleSpec& spec, long long K, double sigma) {
    if (K < 1 || sigma <= dirichlet_threshold(spec)) return std::numeric_limits<double>::infinity();
    const double rho = spec.rho;
    switch (spec.family) {
        case Family::geom_power:
        case Family::log_ratio: {
            // |a_k| <= r rho^k / k
            if (rho < 1.0)
                return spec.r * std::pow(rho, K + 1) /
                       (std::pow(K + 1.0, sigma + 1) * (1.0 - rho));
            return spec.r * std::pow(static_cast<double>(K), -sigma) / sigma;
        }
        case Family::binomial: {
            if (rho < 1.0)
                return spec.m * std::pow(rho, K + 1) /
                       (std::pow(K + 1.0, sigma + 1) * (1.0 - rho));
            return spec.m * std::pow(static_cast<double>(K), -sigma) / sigma;
        }
        case Family::exp_rational: {
            if (rho == 0.0) return 0.0;
            if (rho < 1.0)
                return spec.b * std::pow(rho, K) / (std::pow(K + 1.0, sigma) * (1.0 - rho));
            return spec.b * std::pow(static_cast<double>(K), 1.0 - sigma) / (sigma - 1.0);
        }
        case Family::exp_power: {
            if (rho < 1.0) {
                const double q = 0.5 * (1.0 + rho);
                const double kmin = 2.0 * rho * std::max(0.0, spec.r - 1.0) / (1.0 - rho);
                if (K + 1 < kmin) return std::numeric_limits<double>::infinity();
                const double a_next = log_coeff(spec, K + 1);
                return a_next / (std::pow(K + 1.0, sigma) * (1.0 - q));
            }
            // rho = 1: Wendel-type bound a_k <= C_W k^(r-1), integral tail
            const double cw = spec.r >= 1.0 ? std::pow(spec.r, spec.r - 1.0) / std::tgamma(spec.r)
                                            : std::pow(2.0, 1.0 - spec.r) / std::tgamma(spec.r);
            return cw * std::pow(static_cast<double>(K), spec.r - sigma) / (sigma - spec.r);
        }
        case Family::exp_polynomial: {
            if (K >= spec.m) return 0.0;
            double s = 0;
            for (long long k = K + 1; k <= spec.m; ++k)
                s += std::fabs(log_coeff(spec, k)) / std::pow(static_cast<double>(k), sigma);
            return s;
        }
        case Family::raw: {
            const long long top = static_cast<long long>(spec.raw_coeffs.size());
            if (K >= top) return 0.0;
            double s = 0;
            for (long long k = K + 1; k <= top; ++k)
                s += std::fabs(rat_to_double(spec.raw_coeffs[k - 1])) /
                     std::pow(static_cast<double>(k), sigma);
            return s;
        }
    }
    throw DomainError("log_coeff_tail: invalid family");
}

double weighted_coeff_tail(const EnsembleSpec& spec, long long K, int q, double w) {
    if (!(w > 0 && w < 1)) throw DomainError("weighted_coeff_tail: w must be in (0,1)");
    if (K < 1) return std::numeric_limits<double>::infinity();
    // dominating form |a_k| <= M k^p rho_f^k
    double M, p, rf;
    switch (spec.family) {
        case Family::geom_power: M = spec.r, p = -1, rf = spec.rho; break;
        case Family::binomial: M = static_cast<double>(spec.m), p = -1, rf = spec.rho; break;
        case Family::exp_rational:
            if (spec.rho == 0.0) return 0.0;
            M = spec.b / spec.rho, p = 0, rf = spec.rho;
            break;
        case Family::exp_power: {
            const double cw = spec.r >= 1.0 ? std::pow(spec.r, spec.r - 1.0) / std::tgamma(spec.r)
                                            : std::pow(2.0, 1.0 - spec.r) / std::tgamma(spec.r);
            M = cw / spec.rho, p = spec.r - 1.0, rf = spec.rho;
            break;
        }
        case Family::log_ratio: M = spec.r, p = -1, rf = spec.rho; break;
        case Family::exp_polynomial: {
            if (K >= spec.m) return 0.0;
            double s = 0;
            for (long long k = K + 1; k <= spec.m; ++k)
                s += std::fabs(log_coeff(spec, k)) * std::pow(static_cast<double>(k), q) *
                     std::pow(w, static_cast<double>(k));
            return s;
        }
        case Family::raw: {
            const long long top = static_cast<long long>(spec.raw_coeffs.size());
            if (K >= top) return 0.0;
            double s = 0;
            for (long long k = K + 1; k <= top; ++k)
                s += std::fabs(rat_to_double(spec.raw_coeffs[k - 1])) *
                     std::pow(static_cast<double>(k), q) * std::pow(w, static_cast<double>(k));
            return s;
        }
        default: throw DomainError("weighted_coeff_tail: invalid family");
    }
    const double beta = rf * w;
    const double e = std::max(0.0, p + q);
    const double qbar = beta * std::pow(1.0 + 1.0 / (K + 1.0), e);
    if (qbar >= 1.0) return std::numeric_limits<double>::infinity();
    return M * std::pow(K + 1.0, p + q) * std::pow(beta, K + 1.0) / (1.0 - qbar);
}

DirichletValue dirichlet_A(const EnsembleSpec& spec, double s, double tol) {
    spec.validate();
    const double th = dirichlet_threshold(spec);
    if (!(s > th)) {
        std::ostringstream os;
        os << "dirichlet_A: A+(sigma) diverges for " << spec.describe()
           << " at sigma = " << s << " (requires sigma > " << th << ")";
        throw DivergenceError(os.str());
    }
    // log_ratio prefixes cost O(K^2); keep the growth cap family-aware
    const long long cap = spec.family == Family::log_ratio ? (1 << 15) : (1 << 22);
    long long K = 64;
    while (true) {
        const double tail = log_coeff_tail(spec, K, s);
        if (tail <= tol || K >= cap) {
            if (tail > tol) {
                std::ostringstream os;
                os << "dirichlet_A: cannot certify tail < " << tol << " for " << spec.describe()
                   << " at s = " << s << " within K = " << cap << " (certified tail " << tail
                   << ")";
                throw NumericsError(os.str());
            }
            const auto a = log_coeff_prefix(spec, K);
            long double v = 0, av = 0;
            for (long long k = 1; k <= K; ++k) {
                const long double t = a[k] / std::pow(static_cast<long double>(k), s);
                v += t;
                av += std::fabs(static_cast<double>(t));
            }
            return {static_cast<double>(v), static_cast<double>(av)};
        }
        K *= 2;
    }
}

bool all_log_coeffs_nonnegative(const EnsembleSpec& spec) {
    switch (spec.family) {
        case Family::binomial: return false;
        case Family::raw:
            for (const auto& a : spec.raw_coeffs)
                if (a < 0) return false;
            return true;
        default: return true;
    }
}

Assumption51Result check_assumption_5_1(const EnsembleSpec& spec,
                                        const std::vector<double>& theta_grid,
                                        const std::vector<double>& t_grid) {
    spec.validate();
    double best = std::numeric_limits<double>::infinity();
    for (double theta : theta_grid) {
        if (!(theta > 0 && theta < 1)) continue;
        const double h = h0_eval(spec, theta);
        for (double t : t_grid) {
            const double den = theta * (1.0 - std::cos(t));
            if (den < theta * 1e-12) continue;  // t = 0 (mod 2pi): skip
            const double num =
                h - h0_eval(spec, std::complex<double>(theta * std::cos(t), theta * std::sin(t)))
                        .real();
            best = std::min(best, num / den);
        }
    }
    Assumption51Result res;
    res.grid_estimate = best;
    res.holds = best > 0;
    if (all_log_coeffs_nonnegative(spec)) {
        const double a1 = log_coeff(spec, 1);
        if (a1 > 0) res.analytic_delta = a1;
    }
    return res;
}

}  // namespace partsim
