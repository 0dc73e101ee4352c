// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "partsim/ensemble.hpp"

namespace partsim {

// Machine-readable outcome of one verification check. `pass` is decided by
// the stated thresholds only; `statistics` carries every number that went
// into the decision so reports are auditable.
struct VerificationReport {
    std::string check_name;
    std::string spec_descriptor;
    std::vector<long long> n_values;
    std::map<std::string, double> statistics;
    bool pass = false;
    std::uint64_t seed = 0;
};

// |E_z(N) - n| / n^((sigma+1)/2) across n_list, sigma = 1/2 where A+(1/2)
// converges (else the smallest admissible exponent, noted in statistics).
// Pass: no growth trend (last <= 2x first) and either the values stay in a
// factor-10 band or they are non-increasing outright — an error that decays
// faster than the bound satisfies the bound a fortiori.
VerificationReport check_mean_error(const EnsembleSpec& spec,
                                    const std::vector<long long>& n_list);

// Local limit theorem: exact residual max |Q_z{N=m} - normal(m)| over the
// +-3 sigma window at n/16 and n (n <= 3200 for the exact route), plus a
// Monte Carlo frequency comparison at n.
VerificationReport check_llt(const EnsembleSpec& spec, long long n, long long replicas,
                             std::uint64_t seed);

// Exceedance frequency of sup_{x>=delta} |scaled profile - omega*| > epsilon
// under Q_z and under P_n, across n_list. Pass: both sequences non-increasing
// and the largest-n values <= 0.1.
VerificationReport check_shape_convergence(const EnsembleSpec& spec,
                                           const std::vector<long long>& n_list,
                                           long long replicas, double delta, double epsilon,
                                           std::uint64_t seed, int threads = 0);

// n^(-1/2) Var_z[Y(x sqrt(n))] against gamma^-1 e^(-gamma x) H0'(e^(-gamma x)),
// relative error < 5% at each x.
VerificationReport check_variance_profile(const EnsembleSpec& spec, long long n,
                                          const std::vector<double>& x_list);

// worker-pool width: PARTSIM_THREADS env var, else hardware concurrency
int default_thread_count();

}  // namespace partsim
