// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "partsim/errors.hpp"
#include "partsim/rational.hpp"

namespace partsim {

// The six generating-function families. Closed forms:
//   geom_power      F0(u) = (1 - rho*u)^(-r)                r > 0, rho in (0,1]
//   binomial        F0(u) = (1 + rho*u)^m                   m in N, rho in (0,1]
//   exp_rational    F0(u) = exp(b*u / (1 - rho*u))          b > 0, rho in [0,1]
//   exp_power       F0(u) = exp(u / (1 - rho*u)^r)          r > 0, r != 1, rho in (0,1]
//   exp_polynomial  F0(u) = exp(u * (1 + rho*u)^(m-1))      m in N, rho in [0,1]
//   log_ratio       F0(u) = (-ln(1 - rho*u) / (rho*u))^r    r > 0, rho in (0,1]
// plus `raw`, an escape hatch defined by an explicit finite list of
// log-series coefficients a_1..a_K (H0 is then that polynomial).
enum class Family {
    geom_power,
    binomial,
    exp_rational,
    exp_power,
    exp_polynomial,
    log_ratio,
    raw,
};

std::string family_name(Family f);               // kebab-case CLI name
Family family_from_name(const std::string& name);

struct EnsembleSpec {
    Family family = Family::geom_power;
    double r = 0.0;
    double rho = 0.0;
    double b = 0.0;
    long long m = 0;
    long long cutoff_k = 512;          // series truncation order for generic paths
    std::vector<Rat> raw_coeffs;       // a_1.. for Family::raw

    static EnsembleSpec geom_power(double r, double rho, long long cutoff_k = 512);
    static EnsembleSpec binomial(long long m, double rho, long long cutoff_k = 512);
    static EnsembleSpec exp_rational(double b, double rho, long long cutoff_k = 512);
    static EnsembleSpec exp_power(double r, double rho, long long cutoff_k = 512);
    static EnsembleSpec exp_polynomial(long long m, double rho, long long cutoff_k = 512);
    static EnsembleSpec log_ratio(double r, double rho, long long cutoff_k = 512);
    static EnsembleSpec raw(std::vector<Rat> a, long long cutoff_k = 512);

    void validate() const;             // throws DomainError
    std::string describe() const;
};

// --- coefficients of H0(u) = ln F0(u) = sum a_k u^k ------------------------

double log_coeff(const EnsembleSpec& spec, long long k);
// a_1..a_K in one pass (the log_ratio recurrence is triangular, so batch
// evaluation is the natural unit there)
std::vector<double> log_coeff_prefix(const EnsembleSpec& spec, long long K);

Rat log_coeff_exact(const EnsembleSpec& spec, long long k);
std::vector<Rat> log_coeff_prefix_exact(const EnsembleSpec& spec, long long K);

// --- coefficients of F0(u) = sum c_k u^k ------------------------------------

double gf_coeff(const EnsembleSpec& spec, long long k);
std::vector<double> gf_coeff_prefix(const EnsembleSpec& spec, long long K);  // c_0..c_K
Rat gf_coeff_exact(const EnsembleSpec& spec, long long k);
std::vector<Rat> gf_coeff_prefix_exact(const EnsembleSpec& spec, long long K);

// --- evaluation --------------------------------------------------------------

// Open domain of the closed-form H0 evaluation on the positive real axis
// (1/rho for the families singular there, +inf for entire ones).
double convergence_radius(const EnsembleSpec& spec);

double h0_eval(const EnsembleSpec& spec, double u);
std::complex<double> h0_eval(const EnsembleSpec& spec, std::complex<double> u);
double h0_deriv(const EnsembleSpec& spec, double u);   // H0'(u)
double f0_eval(const EnsembleSpec& spec, double u);    // F0(u) = exp(H0(u))

// --- Dirichlet series A(s) = sum a_k / k^s ----------------------------------

// sigma threshold: A+(sigma) < inf for all sigma > threshold. 0 means every
// positive sigma converges.
double dirichlet_threshold(const EnsembleSpec& spec);

// Certified bound on the tail sum_{k>K} |a_k| / k^sigma.
double log_coeff_tail(const EnsembleSpec& spec, long long K, double sigma);

// Certified bound on sum_{k>K} |a_k| k^q w^k for w in (0,1). Returns the
// bound together with validity (K may need to grow before the geometric
// ratio argument applies).
double weighted_coeff_tail(const EnsembleSpec& spec, long long K, int q, double w);

struct DirichletValue {
    double value;      // partial sum of a_k / k^s, |error| <= tol
    double abs_value;  // partial sum of |a_k| / k^s, same certificate
};
DirichletValue dirichlet_A(const EnsembleSpec& spec, double s, double tol);

// true if a_k >= 0 for all k (every family except binomial; raw is inspected)
bool all_log_coeffs_nonnegative(const EnsembleSpec& spec);

// --- Assumption 5.1 ----------------------------------------------------------

struct Assumption51Result {
    double grid_estimate;                  // min over grid of LHS/RHS of (5.1)
    bool holds;                            // grid_estimate > 0
    std::optional<double> analytic_delta;  // a_1 when all a_k >= 0, a_1 > 0
};
Assumption51Result check_assumption_5_1(const EnsembleSpec& spec,
                                        const std::vector<double>& theta_grid,
                                        const std::vector<double>& t_grid);

}  // namespace partsim
