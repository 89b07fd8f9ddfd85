#pragma once

#include <optional>
#include <vector>

namespace sqjc {

// Optimal-squeezing solutions at one N_C. The closed-form minimum-Q condition
// is reported alongside the direct argmin, never substituted for it: the two
// disagree (see README), and only the direct argmin is certified.
struct MinQResult {
    double ns_direct;                        // argmin of Q(N_C, .)
    double q_at_min;                         // Q at ns_direct
    std::optional<double> ns_condition_root; // root of q_residual, if bracketed
};

struct OptimalityReport {
    double n_c;
    double ns_min_variance;
    double res_min_variance;                   // variance_residual at the root
    double ns_min_q_direct;
    double q_at_min_q;
    std::optional<double> ns_min_q_condition;  // closed-form condition root
    std::optional<double> res_min_q_condition; // q_residual at that root
};

// Stationarity condition for the photon-number variance in N_S at fixed N_C,
// as residual = 2 (1 + N_C + 2 N_S) sqrt(N_S (1+N_S)) - N_C (1 + 2 N_S).
// Zero exactly where d(variance)/dN_S vanishes.
double variance_residual(double n_c, double n_s);

// Closed-form minimum-Q condition, evaluated exactly as stated:
// residual = 2 (N_C+N_S)^2 + N_C (1 + (1 + 1/N_S)^(-1/2)) - N_C^2 (1 + 1/N_S)^(1/2).
// Throws DomainError at N_S = 0 (the 1/N_S singularity).
double q_residual(double n_c, double n_s);

// Bisection root of variance_residual on (0, N_C], certified against the
// direct scalar minimization of the variance. Requires N_C >= 1.
double solve_min_variance(double n_c, double tol = 1e-10);

// Direct golden-section argmin of Q(N_C, .) on (0, N_C], plus the closed-form
// condition root when a sign change exists in (1e-6, N_C]. Requires N_C >= 1.
MinQResult solve_min_q(double n_c, double tol = 1e-10);

// One report per integer N_C in [n_c_min, n_c_max], ascending. A solver
// failure marks the affected fields of that row as NaN instead of aborting.
std::vector<OptimalityReport> scan_optimal(int n_c_min, int n_c_max, double tol = 1e-10);

}  // namespace sqjc
