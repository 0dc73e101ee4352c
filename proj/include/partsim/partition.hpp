// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "partsim/errors.hpp"

namespace partsim {

// Sparse multiplicity encoding of an integer partition: counts[l] is the
// number of parts equal to l, zero counts never stored. total caches
// sum l * counts[l].
struct Partition {
    std::map<long long, long long> counts;
    long long total = 0;

    static Partition from_counts(std::map<long long, long long> c) {
        Partition p;
        for (const auto& [part, mult] : c) {
            if (part < 1) throw DomainError("Partition: part sizes must be positive");
            if (mult < 0) throw DomainError("Partition: multiplicities must be nonnegative");
            if (mult == 0) continue;
            p.counts[part] = mult;
            p.total += part * mult;
        }
        return p;
    }

    void add(long long part, long long mult) {
        if (mult == 0) return;
        counts[part] += mult;
        total += part * mult;
    }

    long long num_parts() const {
        long long n = 0;
        for (const auto& [p, m] : counts) n += m;
        return n;
    }

    bool empty() const { return counts.empty(); }

    // compact text form matching the usual multiplicity notation, e.g.
    // "1^2 2^3 4" for (4,2,2,2,1,1)
    std::string to_text() const {
        if (counts.empty()) return "()";
        std::string s;
        for (const auto& [part, mult] : counts) {
            if (!s.empty()) s += ' ';
            s += std::to_string(part);
            if (mult > 1) s += '^' + std::to_string(mult);
        }
        return s;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.counts == b.counts;
    }
    friend bool operator<(const Partition& a, const Partition& b) {
        return a.counts < b.counts;
    }
};

}  // namespace partsim
