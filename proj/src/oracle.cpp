// SPDX-License-Identifier: Apache-2.0
#include "partsim/oracle.hpp"

#include <cmath>
#include <functional>

namespace partsim {

WeightTable normalizer_table(const EnsembleSpec& spec, long long n_max, bool exact_mode) {
    spec.validate();
    if (n_max < 0) throw DomainError("normalizer_table: n_max must be >= 0");
    WeightTable table;
    table.n_max = n_max;

    if (exact_mode) {
        const auto c = gf_coeff_prefix_exact(spec, n_max);
        for (const auto& ck : c)
            if (ck < 0) table.negative_coeff_warning = true;
        std::vector<Rat> P(n_max + 1);
        P[0] = 1;
        for (long long l = 1; l <= n_max; ++l) {
            // multiply P by sum_k c_k x^(k l), truncated at degree n_max
            for (long long j = n_max; j >= l; --j) {
                Rat acc = P[j];
                for (long long k = 1; k * l <= j; ++k) acc += c[k] * P[j - k * l];
                P[j] = acc;
            }
        }
        table.exact = P;
        table.weights.resize(n_max + 1);
        for (long long j = 0; j <= n_max; ++j) table.weights[j] = rat_to_double(P[j]);
        return table;
    }

    const auto c = gf_coeff_prefix(spec, n_max);
    for (double ck : c)
        if (ck < 0) table.negative_coeff_warning = true;
    std::vector<long double> P(n_max + 1, 0.0L);
    P[0] = 1.0L;
    for (long long l = 1; l <= n_max; ++l) {
        for (long long j = n_max; j >= l; --j) {
            long double acc = P[j];
            for (long long k = 1; k * l <= j; ++k)
                acc += static_cast<long double>(c[k]) * P[j - k * l];
            P[j] = acc;
        }
    }
    table.weights.resize(n_max + 1);
    for (long long j = 0; j <= n_max; ++j) table.weights[j] = static_cast<double>(P[j]);
    return table;
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 0) throw DomainError("enumerate_partitions: n must be >= 0");
    if (n > 30) throw SizeError("enumerate_partitions: n > 30 exceeds the enumeration cap");
    std::vector<Partition> out;
    Partition cur;
    // parts chosen in non-increasing order
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            cur.add(part, 1);
            rec(remaining - part, part);
            cur.add(part, -1);
            if (cur.counts[part] == 0) cur.counts.erase(part);
        }
    };
    rec(n, n);
    return out;
}

Rat partition_weight_exact(const EnsembleSpec& spec, const Partition& p) {
    long long kmax = 0;
    for (const auto& [part, mult] : p.counts) kmax = std::max(kmax, mult);
    const auto c = gf_coeff_prefix_exact(spec, kmax);
    Rat w = 1;
    for (const auto& [part, mult] : p.counts) w *= c[mult];
    return w;
}

std::map<Partition, double> exact_conditional(const EnsembleSpec& spec, int n) {
    spec.validate();
    if (n < 1) throw DomainError("exact_conditional: n must be positive");
    if (n > 30) throw SizeError("exact_conditional: n > 30 exceeds the enumeration cap");
    if (!(gf_coeff_exact(spec, 1) > 0))
        throw DomainError("exact_conditional: c_1 must be positive for Lambda_n to be reachable");

    const auto parts = enumerate_partitions(n);
    const auto c = gf_coeff_prefix_exact(spec, n);
    std::vector<Rat> weights(parts.size());
    Rat total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        Rat w = 1;
        for (const auto& [part, mult] : parts[i].counts) w *= c[mult];
        weights[i] = w;
        total += w;
    }
    if (total <= 0) throw NumericsError("exact_conditional: normalizer C_n is not positive");
    std::map<Partition, double> law;
    for (std::size_t i = 0; i < parts.size(); ++i)
        law[parts[i]] = rat_to_double(weights[i] / total);
    return law;
}

double log_grand_normalizer(const EnsembleSpec& spec, double z) {
    spec.validate();
    if (!(z > 0 && z < 1)) throw DomainError("log_grand_normalizer: z must be in (0,1)");
    // neglected mass: sum_{l > L} H0(z^l) <= sum (F0(z^l) - 1) <= (F0(z^(L+1)) - 1)/(1 - z)
    const double tol = 1e-12;
    long double logF = 0;
    long long l = 1;
    double u = z;
    while (true) {
        logF += h0_eval(spec, u);
        const double next = std::pow(z, static_cast<double>(l + 1));
        if ((f0_eval(spec, next) - 1.0) / (1.0 - z) < tol) break;
        if (l > 2'000'000'000LL)
            throw ConfigError("log_grand_normalizer: cutoff search exceeded 2e9 factors");
        ++l;
        u = next;
    }
    return static_cast<double>(logF);
}

double exact_event_prob(const EnsembleSpec& spec, double z, long long n,
                        const WeightTable& table) {
    spec.validate();
    if (!(z > 0 && z < 1)) throw DomainError("exact_event_prob: z must be in (0,1)");
    if (n < 0 || n > table.n_max)
        throw DomainError("exact_event_prob: n outside the computed weight table");
    const double logF = log_grand_normalizer(spec, z);
    const double cn = table.weights[n];
    // C_n z^n / F(z) in log space; C_n can span hundreds of orders of magnitude
    return std::exp(std::log(cn) + n * std::log(z) - logF);
}

}  // namespace partsim
