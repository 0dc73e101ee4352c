// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "partsim/ensemble.hpp"
#include "partsim/partition.hpp"
#include "partsim/rational.hpp"

namespace partsim {

// Exact normalizers C_n = sum_{lambda |- n} prod_l c_{nu_l}, built by
// sequential truncated polynomial multiplication over part sizes l.
struct WeightTable {
    long long n_max = 0;
    std::vector<double> weights;       // C_0..C_n (float mode, long-double DP)
    std::vector<Rat> exact;            // populated in exact mode
    bool negative_coeff_warning = false;

    bool has_exact() const { return !exact.empty(); }
};

WeightTable normalizer_table(const EnsembleSpec& spec, long long n_max, bool exact_mode = false);

// All partitions of n (multiplicity encoding), n <= 30.
std::vector<Partition> enumerate_partitions(int n);

// P_n(lambda) = c(lambda) / C_n over the full enumeration of n. Exact
// rational arithmetic internally; returned as doubles.
std::map<Partition, double> exact_conditional(const EnsembleSpec& spec, int n);

// c(lambda) = prod_l c_{nu_l} in exact arithmetic.
Rat partition_weight_exact(const EnsembleSpec& spec, const Partition& p);

// Q_z(Lambda_n) = C_n z^n / F(z), the product F truncated with a certified
// relative error below 1e-10.
double exact_event_prob(const EnsembleSpec& spec, double z, long long n,
                        const WeightTable& table);

// log F(z) = sum_l H0(z^l) with the same truncation guarantee.
double log_grand_normalizer(const EnsembleSpec& spec, double z);

}  // namespace partsim
