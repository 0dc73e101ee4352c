// SPDX-License-Identifier: Apache-2.0
#include "partsim/sampler.hpp"

#include <cmath>
#include <sstream>

namespace partsim {

namespace {

constexpr double kDenseWeight = 0.2;  // z^l above this stays on the dense path
constexpr long long kPmfCap = 100'000;

}  // namespace

GrandSampler::GrandSampler(const EnsembleSpec& spec, const Calibration& cal,
                           const SamplerConfig& cfg)
    : spec_(spec), cfg_(cfg) {
    spec_.validate();
    cfg_.validate();
    if (!(cal.z > 0 && cal.z < 1)) throw DomainError("GrandSampler: z must be in (0,1)");
    z_ = cal.z;
    log_z_ = std::log(z_);

    // cutoff L: neglected mass sum_{l>L}(F0(z^l)-1) <= (F0(z^(L+1))-1)/(1-z)
    auto small_enough = [&](long long L) {
        const double u = std::exp(log_z_ * static_cast<double>(L + 1));
        return (f0_eval(spec_, u) - 1.0) / (1.0 - z_) < cfg_.tail_epsilon;
    };
    long long hi = 1;
    while (!small_enough(hi)) {
        hi *= 2;
        if (hi > 1'000'000'000LL)
            throw ConfigError("GrandSampler: cutoff search exceeded 1e9 part sizes");
    }
    long long lo = hi / 2;
    while (lo + 1 < hi) {
        const long long mid = lo + (hi - lo) / 2;
        (small_enough(mid) ? hi : lo) = mid;
    }
    L_ = hi;

    l_split_ = std::min<long long>(
        L_, static_cast<long long>(std::ceil(std::log(kDenseWeight) / log_z_)));
    const double u0 = std::exp(log_z_ * static_cast<double>(l_split_ + 1));
    envelope_scale_ = l_split_ < L_ ? (f0_eval(spec_, u0) - 1.0) / u0 : 0.0;

    dense_.reserve(l_split_);
    for (long long l = 1; l <= l_split_; ++l) dense_.push_back(build_marginal(l));
    gf_prefix_ = gf_coeff_prefix(spec_, 64);
}

GrandSampler::Marginal GrandSampler::build_marginal(long long ell) const {
    Marginal m;
    m.w = std::exp(log_z_ * static_cast<double>(ell));
    switch (spec_.family) {
        case Family::geom_power: {
            const double rw = spec_.rho * m.w;
            if (spec_.r == 1.0) {
                m.kind = Kind::geometric;
                m.p = std::log(rw);
                return m;
            }
            if (spec_.r == std::floor(spec_.r) && spec_.r <= 64.0) {
                m.kind = Kind::negbin_sum;
                m.p = std::log(rw);
                m.reps = static_cast<long long>(spec_.r);
                return m;
            }
            break;
        }
        case Family::binomial: {
            if (spec_.m <= 64) {
                m.kind = Kind::bernoulli_binom;
                const double rw = spec_.rho * m.w;
                m.p = rw / (1.0 + rw);
                m.reps = spec_.m;
                return m;
            }
            break;
        }
        case Family::exp_rational: {
            if (spec_.rho == 0.0 && spec_.b * m.w <= 30.0) {
                m.kind = Kind::poisson_knuth;
                m.p = std::exp(-spec_.b * m.w);
                return m;
            }
            break;
        }
        default: break;
    }
    // generic inverse-CDF table for this weight
    m.kind = Kind::table;
    const double f0 = f0_eval(spec_, m.w);
    std::vector<double> c = gf_coeff_prefix(spec_, 64);
    double cum = 1.0 / f0, wk = 1.0;
    m.cdf.push_back(cum);
    for (long long k = 1;; ++k) {
        if (k >= static_cast<long long>(c.size()))
            c = gf_coeff_prefix(spec_, 2 * (static_cast<long long>(c.size()) - 1));
        wk *= m.w;
        cum += c[k] * wk / f0;
        m.cdf.push_back(std::min(cum, 1.0));
        if (1.0 - cum < 0.5 * cfg_.tail_epsilon) break;
        if (k > kPmfCap) {
            std::ostringstream os;
            os << "marginal pmf for " << spec_.describe() << " at weight z^l = " << m.w
               << " did not reach 1 - tail_epsilon within " << kPmfCap << " terms";
            throw NumericsError(os.str());
        }
    }
    return m;
}

long long GrandSampler::draw_marginal(const Marginal& m, Rng& rng) const {
    switch (m.kind) {
        case Kind::geometric:
            // P(nu >= k) = (rho w)^k; m.p = log(rho w)
            return static_cast<long long>(std::log(rng.uniform01()) / m.p);
        case Kind::negbin_sum: {
            long long s = 0;
            for (long long i = 0; i < m.reps; ++i)
                s += static_cast<long long>(std::log(rng.uniform01()) / m.p);
            return s;
        }
        case Kind::bernoulli_binom: {
            long long s = 0;
            for (long long i = 0; i < m.reps; ++i) s += rng.uniform01() < m.p ? 1 : 0;
            return s;
        }
        case Kind::poisson_knuth: {
            // m.p = exp(-lambda)
            long long k = 0;
            double prod = rng.uniform01();
            while (prod > m.p) {
                ++k;
                prod *= rng.uniform01();
            }
            return k;
        }
        case Kind::table: {
            const double u = rng.uniform01();
            const auto it = std::lower_bound(m.cdf.begin(), m.cdf.end(), u);
            if (it == m.cdf.end()) return static_cast<long long>(m.cdf.size()) - 1;
            return static_cast<long long>(it - m.cdf.begin());
        }
    }
    throw DomainError("draw_marginal: invalid kind");
}

long long GrandSampler::draw_positive(double w, Rng& rng) {
    // walk P(nu = k | nu >= 1) proportional to c_k w^k, k >= 1
    const double target = rng.uniform01() * (f0_eval(spec_, w) - 1.0);
    double acc = 0, wk = 1.0;
    for (long long k = 1;; ++k) {
        if (k >= static_cast<long long>(gf_prefix_.size()))
            gf_prefix_ = gf_coeff_prefix(spec_, 2 * (static_cast<long long>(gf_prefix_.size()) - 1));
        wk *= w;
        acc += gf_prefix_[k] * wk;
        if (acc >= target) return k;
        if (k > kPmfCap)
            throw NumericsError("draw_positive: pmf walk exceeded the term cap");
    }
}

Partition GrandSampler::draw(Rng& rng) {
    Partition p;
    for (long long l = 1; l <= l_split_; ++l) {
        const long long nu = draw_marginal(dense_[l - 1], rng);
        if (nu > 0) p.add(l, nu);
    }
    // sparse tail: thin a dominating homogeneous geometric envelope
    long long pos = l_split_;
    while (pos < L_) {
        const double qbar =
            std::min(1.0, envelope_scale_ * std::exp(log_z_ * static_cast<double>(pos + 1)));
        if (!(qbar > 0)) break;
        long long s;
        if (qbar >= 1.0) {
            s = pos + 1;
        } else {
            const double g = std::floor(std::log(rng.uniform01()) / std::log1p(-qbar));
            if (g > static_cast<double>(L_ - pos - 1)) break;
            s = pos + 1 + static_cast<long long>(g);
        }
        const double ws = std::exp(log_z_ * static_cast<double>(s));
        const double ps = -std::expm1(-h0_eval(spec_, ws));  // 1 - 1/F0(z^s)
        if (rng.uniform01() < ps / qbar) p.add(s, draw_positive(ws, rng));
        pos = s;
    }
    return p;
}

long long marginal_sample(const EnsembleSpec& spec, double z, long long ell, Rng& rng) {
    spec.validate();
    if (!(z > 0 && z < 1)) throw DomainError("marginal_sample: z must be in (0,1)");
    if (ell < 1) throw DomainError("marginal_sample: ell must be >= 1");
    Calibration cal;
    cal.n = 1;
    cal.gamma = -std::log(z);
    cal.alpha = cal.gamma;
    cal.z = z;
    SamplerConfig cfg;
    GrandSampler gs(spec, cal, cfg);
    const auto m = gs.build_marginal(ell);
    return gs.draw_marginal(m, rng);
}

Partition sample_grand(const EnsembleSpec& spec, const Calibration& cal,
                       const SamplerConfig& cfg, Rng& rng) {
    GrandSampler gs(spec, cal, cfg);
    return gs.draw(rng);
}

ConditionedSample sample_conditioned(const EnsembleSpec& spec, long long n,
                                     const Calibration& cal, const SamplerConfig& cfg,
                                     Rng& rng) {
    if (n < 1) throw DomainError("sample_conditioned: n must be positive");
    if (!(gf_coeff(spec, 1) > 0))
        throw DomainError("sample_conditioned: c_1 must be positive for Lambda_n to be reachable");
    GrandSampler gs(spec, cal, cfg);
    for (long long trials = 1; trials <= cfg.max_trials; ++trials) {
        Partition p = gs.draw(rng);
        if (p.total == n) return {std::move(p), trials};
    }
    std::ostringstream os;
    os << "sample_conditioned: no partition of " << n << " accepted within " << cfg.max_trials
       << " trials";
    throw RejectionTimeout(os.str(), cfg.max_trials);
}

ConditionedSample sample_conditioned(const EnsembleSpec& spec, long long n,
                                     const SamplerConfig& cfg, Rng& rng) {
    return sample_conditioned(spec, n, calibrate(spec, n), cfg, rng);
}

}  // namespace partsim
