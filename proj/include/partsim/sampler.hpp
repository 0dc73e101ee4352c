// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "partsim/calibrate.hpp"
#include "partsim/ensemble.hpp"
#include "partsim/partition.hpp"
#include "partsim/rng.hpp"

namespace partsim {

struct SamplerConfig {
    std::uint64_t seed = 20250809;     // documented default, reproducible runs
    double tail_epsilon = 1e-12;       // neglected probability mass bound
    long long max_trials = 100'000'000;

    void validate() const {
        if (!(tail_epsilon > 0 && tail_epsilon < 1))
            throw DomainError("SamplerConfig: tail_epsilon must be in (0,1)");
        if (max_trials < 1) throw DomainError("SamplerConfig: max_trials must be >= 1");
    }
};

// One draw of nu_l from the exact marginal Q_z{nu_l = k} = c_k z^(kl)/F0(z^l).
// Families with classical marginals use the direct sampler (negative
// binomial / binomial / Poisson); everything else inverts the pmf.
long long marginal_sample(const EnsembleSpec& spec, double z, long long ell, Rng& rng);

// Draws whole partitions from Q_z. The part-size axis splits at l_split:
// below it every nu_l is drawn from its cached marginal; above it sites with
// nu_l > 0 are generated by thinning a dominating geometric envelope, which
// is an exact simulation of the same product measure. The cutoff L bounds
// the neglected mass sum_{l>L} Q_z{nu_l > 0} below tail_epsilon.
class GrandSampler {
  public:
    GrandSampler(const EnsembleSpec& spec, const Calibration& cal, const SamplerConfig& cfg);

    Partition draw(Rng& rng);

    long long cutoff() const { return L_; }
    long long split() const { return l_split_; }
    double z() const { return z_; }

  private:
    enum class Kind { geometric, negbin_sum, bernoulli_binom, poisson_knuth, table };
    struct Marginal {
        Kind kind;
        double w = 0;        // z^l
        double p = 0;        // kind-specific parameter
        long long reps = 0;  // negbin_sum / bernoulli_binom repetitions
        std::vector<double> cdf;
    };

    Marginal build_marginal(long long ell) const;
    long long draw_marginal(const Marginal& m, Rng& rng) const;
    long long draw_positive(double w, Rng& rng);  // nu | nu >= 1 at weight w

    EnsembleSpec spec_;
    SamplerConfig cfg_;
    double z_, log_z_;
    long long L_ = 0, l_split_ = 0;
    double envelope_scale_ = 0;       // M0 with Q_z{nu_l > 0} <= M0 z^l beyond the split
    std::vector<Marginal> dense_;
    std::vector<double> gf_prefix_;   // c_0.. for positive-conditional walks

    friend long long marginal_sample(const EnsembleSpec&, double, long long, Rng&);
};

Partition sample_grand(const EnsembleSpec& spec, const Calibration& cal,
                       const SamplerConfig& cfg, Rng& rng);

struct ConditionedSample {
    Partition partition;
    long long trials = 0;
};

// Rejection: fresh grand samples until N = n. Throws RejectionTimeout past
// cfg.max_trials. The calibration defaults to calibrate(spec, n); passing a
// different one is allowed (the conditional law does not depend on z).
ConditionedSample sample_conditioned(const EnsembleSpec& spec, long long n,
                                     const SamplerConfig& cfg, Rng& rng);
ConditionedSample sample_conditioned(const EnsembleSpec& spec, long long n,
                                     const Calibration& cal, const SamplerConfig& cfg, Rng& rng);

}  // namespace partsim
