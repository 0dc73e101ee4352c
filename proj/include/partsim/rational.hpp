// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace partsim {

// Exact arithmetic used by the rational-mode oracles. Every finite double
// is a dyadic rational, so converting parameters through Rat is lossless.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rat rat_from_double(double x) { return Rat(x); }

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

// binom(a, k) for rational a and integer k >= 0: a(a-1)...(a-k+1)/k!
inline Rat rat_binomial(const Rat& a, long long k) {
    Rat num = 1, den = 1;
    for (long long j = 0; j < k; ++j) {
        num *= (a - j);
        den *= (j + 1);
    }
    return num / den;
}

inline Rat rat_pow(const Rat& base, long long e) {
    Rat r = 1, b = base;
    long long n = e;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

}  // namespace partsim
