#include "sqjc/field_state.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "sqjc/errors.hpp"
#include "sqjc/numerics.hpp"

namespace sqjc {

namespace {

void check_mean_field(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s must be finite and nonnegative, got %.17g", name,
                      value);
        throw DomainError(buf);
    }
}

void check_tail_tol(double tail_tol) {
    if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
        throw DomainError("tail_tol must lie in (0, 1)");
    }
}

// exp argument of the seed amplitude: beta^2 (1 - nu/mu), which collapses to
// N_C (1 + nu/mu) via mu^2 - nu^2 = 1. The collapsed form never cancels.
double seed_exponent(const SqueezeParams& p) {
    return p.n_coherent * (1.0 + p.nu / p.mu);
}

double log_seed(const SqueezeParams& p) {
    return -0.5 * std::log(p.mu) - 0.5 * seed_exponent(p);
}

bool seed_representable(const SqueezeParams& p) {
    return log_seed(p) >= std::log(std::numeric_limits<double>::min());
}

std::size_t hard_cap(const SqueezeParams& p) {
    return static_cast<std::size_t>(std::ceil(100.0 * (p.mean() + 1.0)));
}

std::size_t initial_guess(const SqueezeParams& p, std::size_t cap) {
    double variance = 2.0 * p.n_squeezed * (1.0 + p.n_squeezed) +
                      p.n_coherent / ((p.mu + p.nu) * (p.mu + p.nu));
    auto guess = static_cast<std::size_t>(std::ceil(p.mean() + 12.0 * std::sqrt(variance) + 25.0));
    return guess < cap ? guess : cap;
}

[[noreturn]] void throw_truncation(const SqueezeParams& p, double tail, double tail_tol,
                                   std::size_t cap) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "tail mass %.3e not below %.3e at the hard cutoff cap n=%zu "
                  "(N_C=%.6g, N_S=%.6g)",
                  tail, tail_tol, cap, p.n_coherent, p.n_squeezed);
    throw TruncationError(buf);
}

// Smallest cutoff whose certified remaining mass is below tail_tol; cums[k]
// is the compensated sum of P(0..k).
std::size_t trim_index(const std::vector<double>& cums, double tail_tol) {
    for (std::size_t k = 0; k < cums.size(); ++k) {
        if (1.0 - cums[k] < tail_tol) return k;
    }
    return cums.size() - 1;
}

}  // namespace

SqueezeParams params_from_means(double n_coherent, double n_squeezed) {
    check_mean_field(n_coherent, "N_C");
    check_mean_field(n_squeezed, "N_S");
    SqueezeParams p;
    p.n_coherent = n_coherent;
    p.n_squeezed = n_squeezed;
    p.alpha = std::sqrt(n_coherent);
    p.nu = std::sqrt(n_squeezed);
    p.mu = std::sqrt(1.0 + n_squeezed);
    p.beta = p.alpha * (p.mu + p.nu);
    return p;
}

FockAmplitudes amplitudes(const SqueezeParams& params, double tail_tol) {
    check_tail_tol(tail_tol);
    if (!seed_representable(params)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "seed amplitude underflows for N_C=%.6g, N_S=%.6g; "
                      "use log_amplitudes for this parameter range",
                      params.n_coherent, params.n_squeezed);
        throw DomainError(buf);
    }

    const double r_beta = params.beta / params.mu;
    const double r_nu = params.nu / params.mu;
    const std::size_t cap = hard_cap(params);
    std::size_t limit = initial_guess(params, cap);

    std::vector<double> c;
    std::vector<double> cums;
    c.reserve(limit + 1);
    cums.reserve(limit + 1);
    c.push_back(std::exp(log_seed(params)));
    KahanSum mass;
    mass.add(c[0] * c[0]);
    cums.push_back(mass.value());

    for (;;) {
        while (c.size() <= limit) {
            std::size_t n = c.size() - 1;  // next index is n+1
            double inv = 1.0 / std::sqrt(static_cast<double>(n + 1));
            double prev = n == 0 ? 0.0 : c[n - 1];
            double next =
                r_beta * c[n] * inv - r_nu * std::sqrt(static_cast<double>(n)) * inv * prev;
            c.push_back(next);
            mass.add(next * next);
            cums.push_back(mass.value());
        }
        if (1.0 - mass.value() < tail_tol) break;
        if (limit >= cap) throw_truncation(params, 1.0 - mass.value(), tail_tol, cap);
        limit = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(limit)));
        if (limit > cap) limit = cap;
    }

    std::size_t k = trim_index(cums, tail_tol);
    FockAmplitudes out;
    out.n_max = k;
    out.c.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k + 1));
    out.tail_bound = std::max(0.0, 1.0 - cums[k]);
    return out;
}

LogFockAmplitudes log_amplitudes(const SqueezeParams& params, double tail_tol) {
    check_tail_tol(tail_tol);

    const double r_beta = params.beta / params.mu;
    const double r_nu = params.nu / params.mu;
    const std::size_t cap = hard_cap(params);
    std::size_t limit = initial_guess(params, cap);

    // Scaled recurrence: y_n = c_n * exp(-scale), rescaled whenever y drifts
    // out of a safe magnitude band so the ratio y_{n+1}/y_n never overflows.
    constexpr double kHigh = 1e100, kLow = 1e-100;
    const double kLogHigh = std::log(kHigh);

    std::vector<double> log_abs;
    std::vector<int> sign;
    std::vector<double> cums;
    log_abs.reserve(limit + 1);
    sign.reserve(limit + 1);
    cums.reserve(limit + 1);

    double scale = log_seed(params);
    double y_prev = 0.0, y_cur = 1.0;
    auto record = [&](double y) {
        if (y == 0.0) {
            log_abs.push_back(-std::numeric_limits<double>::infinity());
            sign.push_back(0);
        } else {
            log_abs.push_back(std::log(std::fabs(y)) + scale);
            sign.push_back(y > 0.0 ? 1 : -1);
        }
    };
    KahanSum mass;
    record(y_cur);
    mass.add(std::exp(2.0 * log_abs[0]));
    cums.push_back(mass.value());

    for (;;) {
        while (log_abs.size() <= limit) {
            std::size_t n = log_abs.size() - 1;
            double inv = 1.0 / std::sqrt(static_cast<double>(n + 1));
            double y_next =
                r_beta * y_cur * inv - r_nu * std::sqrt(static_cast<double>(n)) * inv * y_prev;
            double mag = std::max(std::fabs(y_cur), std::fabs(y_next));
            if (mag > kHigh) {
                y_cur *= kLow;
                y_next *= kLow;
                scale += kLogHigh;
            } else if (mag < kLow && mag > 0.0) {
                y_cur *= kHigh;
                y_next *= kHigh;
                scale -= kLogHigh;
            }
            y_prev = y_cur;
            y_cur = y_next;
            record(y_cur);
            mass.add(std::exp(2.0 * log_abs.back()));
            cums.push_back(mass.value());
        }
        if (1.0 - mass.value() < tail_tol) break;
        if (limit >= cap) throw_truncation(params, 1.0 - mass.value(), tail_tol, cap);
        limit = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(limit)));
        if (limit > cap) limit = cap;
    }

    std::size_t k = trim_index(cums, tail_tol);
    LogFockAmplitudes out;
    out.n_max = k;
    out.log_abs_c.assign(log_abs.begin(), log_abs.begin() + static_cast<std::ptrdiff_t>(k + 1));
    out.sign.assign(sign.begin(), sign.begin() + static_cast<std::ptrdiff_t>(k + 1));
    out.tail_bound = std::max(0.0, 1.0 - cums[k]);
    return out;
}

std::size_t choose_cutoff(const SqueezeParams& params, double tail_tol) {
    if (seed_representable(params)) return amplitudes(params, tail_tol).n_max;
    return log_amplitudes(params, tail_tol).n_max;
}

std::vector<double> photon_distribution(const FockAmplitudes& amps) {
    std::vector<double> p(amps.c.size());
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = amps.c[n] * amps.c[n];
    return p;
}

std::vector<double> photon_distribution(const LogFockAmplitudes& amps) {
    std::vector<double> p(amps.log_abs_c.size());
    for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::exp(2.0 * amps.log_abs_c[n]);
    return p;
}

std::vector<double> photon_distribution(const SqueezeParams& params, double tail_tol) {
    if (seed_representable(params)) return photon_distribution(amplitudes(params, tail_tol));
    return photon_distribution(log_amplitudes(params, tail_tol));
}

FieldMoments moments(const SqueezeParams& params) {
    const double ns = params.n_squeezed;
    const double sum = params.mu + params.nu;
    FieldMoments m;
    m.mean = params.mean();
    m.variance = 2.0 * ns * (1.0 + ns) + params.n_coherent / (sum * sum);
    m.mandel_q = m.mean > 0.0 ? m.variance / m.mean - 1.0 : 0.0;
    return m;
}

}  // namespace sqjc
