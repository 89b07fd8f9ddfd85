#pragma once

#include <cstddef>
#include <vector>

namespace sqjc {

inline constexpr double kDefaultTailTol = 1e-12;

// Squeezed coherent field state, parameterized by the mean photon numbers of
// its coherent part (N_C = alpha^2) and squeezed part (N_S = sinh^2|z|), both
// real and nonnegative. mu/nu are cosh|z|/sinh|z|; beta = alpha*(mu+nu).
struct SqueezeParams {
    double n_coherent;
    double n_squeezed;
    double alpha;
    double mu;
    double nu;
    double beta;

    double mean() const { return n_coherent + n_squeezed; }
};

// Number-basis amplitudes c_0..c_n_max of the state, all real, with a
// certified upper bound on the probability mass beyond n_max.
struct FockAmplitudes {
    std::size_t n_max;
    std::vector<double> c;
    double tail_bound;
};

// Same content in log space: |c_n| as log_abs_c[n] (-inf for exact zeros) and
// the amplitude sign. Used when the linear-space seed amplitude underflows.
struct LogFockAmplitudes {
    std::size_t n_max;
    std::vector<double> log_abs_c;
    std::vector<int> sign;
    double tail_bound;
};

struct FieldMoments {
    double mean;
    double variance;
    double mandel_q;
};

// Validates and derives the full parameter set. Throws DomainError naming the
// offending field for negative or non-finite input.
SqueezeParams params_from_means(double n_coherent, double n_squeezed);

// Smallest cutoff certifying that the photon-number tail mass beyond it is
// below tail_tol.
std::size_t choose_cutoff(const SqueezeParams& params, double tail_tol = kDefaultTailTol);

// Amplitudes via the stable three-term recurrence
//   c_{n+1} = (beta/mu) c_n / sqrt(n+1) - (nu/mu) sqrt(n/(n+1)) c_{n-1},
//   c_0 = mu^{-1/2} exp(-beta^2 (1 - nu/mu) / 2),  c_1 = (beta/mu) c_0,
// extended until the tail bound is certified and trimmed to the smallest
// sufficient cutoff. Throws DomainError (use log_amplitudes) if c_0
// underflows, TruncationError if the tail cannot be certified below the hard
// cap n_max <= 100*(mean+1).
FockAmplitudes amplitudes(const SqueezeParams& params, double tail_tol = kDefaultTailTol);

// Log-space variant of the same recurrence (periodic rescaling instead of a
// representable seed); valid for parameters far beyond the linear-space range.
LogFockAmplitudes log_amplitudes(const SqueezeParams& params, double tail_tol = kDefaultTailTol);

// P(n) = c_n^2.
std::vector<double> photon_distribution(const FockAmplitudes& amps);
std::vector<double> photon_distribution(const LogFockAmplitudes& amps);

// Distribution for arbitrary parameters: linear-space amplitudes when
// representable, transparently falling back to the log-space path.
std::vector<double> photon_distribution(const SqueezeParams& params,
                                        double tail_tol = kDefaultTailTol);

// Closed-form moments:
//   mean     = N_C + N_S
//   variance = 2 N_S (1+N_S) + N_C (1 + 2 N_S - 2 sqrt(N_S (1+N_S)))
//   Q        = variance/mean - 1, with Q := 0 for the vacuum.
// The N_C term is evaluated as N_C/(mu+nu)^2, its cancellation-free form.
FieldMoments moments(const SqueezeParams& params);

}  // namespace sqjc
