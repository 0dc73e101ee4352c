// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "partsim/ensemble.hpp"

namespace partsim {

// Coefficients c_{1,q}..c_{q,q} of the closed form
//   S_q(t) = sum_{l>=1} l^(q-1) e^(-t l) = sum_{j=1..q} c_{j,q} e^(-tj)/(1-e^(-t))^j.
// Built by the recursion c_{1,1} = 1,
//   c_{j,q+1} = c_{1,q}            (j = 1)
//             = j c_{j,q} + (j-1) c_{j-1,q}   (2 <= j <= q)
//             = q c_{q,q}          (j = q+1).
// All entries are positive integers; c_{q,q} = (q-1)!.
struct SqCoeffTable {
    int q = 0;
    std::vector<double> coeffs;  // coeffs[j-1] = c_{j,q}
};

SqCoeffTable sq_table(int q);

// S_q(t) for t > 0. Uses the closed form; for large t (where the closed
// form wastes work) the series itself converges in a couple of terms.
double sq_eval(int q, double t);

// sup_{t>0} t^q e^(-t) (1-e^(-t))^(-q), measured numerically (the bound
// constant of the e^{-t}(1-e^{-t})^{-q} <= C_q t^{-q} inequality).
double sq_envelope_constant(int q);

// C~_q with S_q(t) <= C~_q t^(-q): envelope constant times sum of c_{j,q}.
double sq_uniform_constant(int q);

// Dilogarithm Li_2(x) for x in [-1, 1], to ~1e-15 absolute.
double dilog(double x);

// A(1) = int_0^1 u^-1 H0(u) du by adaptive quadrature, with the u -> 1
// endpoint handled by the substitution u = 1 - e^-v. Throws DivergenceError
// when A+(1) = inf for the ensemble.
double gamma_integral(const EnsembleSpec& spec, double tol);

}  // namespace partsim
