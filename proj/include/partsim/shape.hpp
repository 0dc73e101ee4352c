// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "partsim/ensemble.hpp"
#include "partsim/partition.hpp"

namespace partsim {

// Young-diagram boundary Y(x) = sum_{l >= x} nu_l as a step function.
// xs holds the jump locations in increasing order and ys[i] is the value
// on (xs[i-1], xs[i]] (with xs[-1] = 0), so Y(xs[i]) = ys[i]: the part
// l = x is included at integer x, matching the right-closed convention.
// Beyond xs.back() the value is 0.
struct Profile {
    std::vector<double> xs;
    std::vector<double> ys;
    double source_n = 1;  // scaling weight applied (1 = unscaled)

    double operator()(double x) const;
    double area() const;  // integral of Y over [0, inf)
};

Profile profile(const Partition& p);

// (x, y) -> (x/sqrt(n), y/sqrt(n)); area divides by n.
Profile scale(const Profile& prof, long long n);

// omega*(x) = gamma^-1 H0(e^(-gamma x)) via the per-family closed forms.
// Returns +inf at x = 0 for families with H0(1) = inf.
double limit_shape(const EnsembleSpec& spec, double gamma, double x);

// sup over x >= delta of |scaled(x) - omega*(x)|. Candidates are the profile
// jump points (both one-sided values), the point x = delta, a safety grid of
// step grid_step, and the analytic tail beyond the last jump where the sup
// is omega* evaluated at the last live point.
double sup_distance(const Profile& scaled, const EnsembleSpec& spec, double gamma, double delta,
                    double grid_step = 0.05);

}  // namespace partsim
