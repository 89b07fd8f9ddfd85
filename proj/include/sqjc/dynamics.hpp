#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sqjc/field_state.hpp"

namespace sqjc {

// Uniform grid of dimensionless times lambda*t.
struct TimeGrid {
    double start;
    double step;
    std::size_t count;

    double at(std::size_t i) const { return start + step * static_cast<double>(i); }
};

struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values;
};

// Joint atom-field amplitudes at one instant for an atom that started in the
// ground state: ground[n] multiplies |g,n>, excited[n] multiplies |e,n>.
struct JointState {
    double lambda_t;
    std::vector<std::complex<double>> ground;   // size n_max+1
    std::vector<std::complex<double>> excited;  // size n_max

    double norm_squared() const;
};

// Reduced 2x2 atomic density matrix, rows/cols ordered (e, g).
struct AtomDensity {
    std::complex<double> ee, eg, ge, gg;

    double trace() const { return ee.real() + gg.real(); }
    double purity() const;                    // Tr rho^2
    std::pair<double, double> eigenvalues() const;
};

// Closed-form resonant evolution from the atomic ground state:
//   ground[n]  = c_n cos(sqrt(n) lt),  excited[n] = -i c_{n+1} sin(sqrt(n+1) lt).
JointState evolve(const FockAmplitudes& amps, double lambda_t);

// Atomic inversion W(lt) = -1/2 sum_n P(n) cos(2 lt sqrt(n)) for an arbitrary
// photon-number distribution. Throws DomainError if P is not normalized to
// within 1e-6. Values are clamped to the exact range [-1/2, 1/2].
TimeSeries inversion(const std::vector<double>& distribution, const TimeGrid& grid,
                     unsigned workers = 1);

AtomDensity reduce_atom(const JointState& state);

// L = 2 (1 - Tr rho^2), clamped to [0, 1].
double linear_entropy(const AtomDensity& rho);

// Tr rho_F^2 of the reduced field state; O(n_max^2). For a pure joint state it
// equals the atomic purity, which makes it the cross-check for linear_entropy.
double field_purity(const JointState& state);

// L(lt) sampled on the grid; each sample is computed independently so the
// result is byte-identical for any worker count.
TimeSeries entropy_series(const FockAmplitudes& amps, const TimeGrid& grid,
                          unsigned workers = 1);

// Time-averaged linear entropy (1/T) integral of L over [0, lambda_T],
// trapezoidal rule on a uniform grid. step must lie in (0, 0.05]: the fastest
// Rabi angle on a truncated space of a few hundred photons is ~35 per unit
// lambda*t, and 0.05 still resolves it with margin.
double mean_linear_entropy(const FockAmplitudes& amps, double lambda_T, double step,
                           unsigned workers = 1);

}  // namespace sqjc
