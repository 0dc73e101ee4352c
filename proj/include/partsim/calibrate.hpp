// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "partsim/ensemble.hpp"

namespace partsim {

// z = e^-alpha with alpha = gamma n^(-1/2), gamma^2 = A(1): the tuning that
// makes E_z(N) track the target weight n.
struct Calibration {
    long long n = 0;
    double gamma = 0;
    double alpha = 0;
    double z = 0;
};

// Closed-form gamma^2 where the family admits one (all except log-ratio
// and raw); returns NaN otherwise.
double gamma_squared_closed_form(const EnsembleSpec& spec);

// gamma from the closed form or the integral route, cross-checked against
// the Dirichlet partial sum within its certified tail band plus tol.
Calibration calibrate(const EnsembleSpec& spec, long long n, double tol = 1e-9);

// E_z(N) = sum_k k a_k S_2(k alpha); |truncation error| <= tol.
double expected_total(const EnsembleSpec& spec, double z, double tol = 1e-9);

// kappa_q[N] = sum_k k^q a_k S_{q+1}(k alpha); q = 1 is the mean, q = 2 the
// variance.
double cumulant_total(const EnsembleSpec& spec, double z, int q, double tol = 1e-9);

// kappa_q[Y(x)] = sum_k k^q a_k z^(k ceil(x)) / (1 - z^k), the l-sum closed
// over l >= ceil(x) (ties at integer x included).
double profile_cumulant(const EnsembleSpec& spec, double z, int q, double x_cells,
                        double tol = 1e-9);

// Two-sided bounds on the third-order Lyapunov ratio L_z. The lower bound
// is kappa_3[N]/sigma^3; the upper adds the cross term
// 2 sum_{k,m} k|a_k| m^2 |a_m| S_4((k+m) alpha), tail included.
struct LyapunovBounds {
    double lower = 0;
    double upper = 0;
};
LyapunovBounds lyapunov_bounds(const EnsembleSpec& spec, double z, double tol = 1e-6);

}  // namespace partsim
