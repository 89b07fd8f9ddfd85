#include "sqjc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "sqjc/errors.hpp"
#include "sqjc/numerics.hpp"

namespace sqjc {

namespace {

// Runs fn over [0, count) in contiguous chunks, one thread per chunk. Each
// index is computed independently, so the split cannot affect the values.
void for_chunks(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || count < 2 * workers) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned w = std::min<unsigned>(workers, 64);
    std::vector<std::thread> pool;
    pool.reserve(w);
    std::size_t base = count / w, rem = count % w;
    std::size_t begin = 0;
    for (unsigned t = 0; t < w; ++t) {
        std::size_t len = base + (t < rem ? 1 : 0);
        pool.emplace_back([&fn, begin, len] {
            for (std::size_t i = begin; i < begin + len; ++i) fn(i);
        });
        begin += len;
    }
    for (auto& th : pool) th.join();
}

std::vector<double> sqrt_table(std::size_t count) {
    std::vector<double> sq(count);
    for (std::size_t n = 0; n < count; ++n) sq[n] = std::sqrt(static_cast<double>(n));
    return sq;
}

void check_grid(const TimeGrid& grid) {
    if (!(grid.step > 0.0) || !std::isfinite(grid.step) || !std::isfinite(grid.start)) {
        throw DomainError("time grid: step must be positive and endpoints finite");
    }
    if (grid.count < 1) throw DomainError("time grid: needs at least one sample");
}

// Scalars of the reduced atomic state at one instant, sharing one sin/cos
// pair per photon index: P_e, P_g, and the (purely imaginary) coherence.
struct AtomScalars {
    double pe, pg, off;
};

AtomScalars atom_scalars(const std::vector<double>& c, const std::vector<double>& sq,
                         double lambda_t) {
    double pe = 0.0, pg = c[0] * c[0], off = 0.0;
    double cos_prev = 1.0;  // cos(sqrt(0) * t)
    for (std::size_t k = 1; k < c.size(); ++k) {
        double s = std::sin(sq[k] * lambda_t);
        double co = std::cos(sq[k] * lambda_t);
        double e_amp = c[k] * s;
        double g_amp = c[k] * co;
        pe += e_amp * e_amp;
        pg += g_amp * g_amp;
        off += e_amp * (c[k - 1] * cos_prev);
        cos_prev = co;
    }
    return {pe, pg, off};
}

double entropy_from(const AtomScalars& a) {
    double purity = a.pe * a.pe + a.pg * a.pg + 2.0 * a.off * a.off;
    return std::clamp(2.0 * (1.0 - purity), 0.0, 1.0);
}

}  // namespace

double JointState::norm_squared() const {
    KahanSum sum;
    for (const auto& a : ground) sum.add(std::norm(a));
    for (const auto& a : excited) sum.add(std::norm(a));
    return sum.value();
}

double AtomDensity::purity() const {
    return ee.real() * ee.real() + gg.real() * gg.real() + 2.0 * std::norm(eg);
}

std::pair<double, double> AtomDensity::eigenvalues() const {
    double a = ee.real(), d = gg.real();
    double mid = 0.5 * (a + d);
    double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(eg));
    return {mid - disc, mid + disc};
}

JointState evolve(const FockAmplitudes& amps, double lambda_t) {
    if (!std::isfinite(lambda_t)) throw DomainError("evolve: lambda_t must be finite");
    const auto& c = amps.c;
    JointState st;
    st.lambda_t = lambda_t;
    st.ground.resize(c.size());
    st.excited.resize(c.size() - 1);
    auto sq = sqrt_table(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        st.ground[n] = {c[n] * std::cos(sq[n] * lambda_t), 0.0};
    }
    for (std::size_t n = 0; n + 1 < c.size(); ++n) {
        st.excited[n] = {0.0, -c[n + 1] * std::sin(sq[n + 1] * lambda_t)};
    }
    return st;
}

TimeSeries inversion(const std::vector<double>& distribution, const TimeGrid& grid,
                     unsigned workers) {
    check_grid(grid);
    if (distribution.empty()) throw DomainError("inversion: empty distribution");
    KahanSum total;
    for (double p : distribution) total.add(p);
    if (std::fabs(total.value() - 1.0) > 1e-6) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "inversion: distribution sums to %.12g, not 1",
                      total.value());
        throw DomainError(buf);
    }

    std::vector<double> omega(distribution.size());
    for (std::size_t n = 0; n < omega.size(); ++n)
        omega[n] = 2.0 * std::sqrt(static_cast<double>(n));

    TimeSeries series{grid, std::vector<double>(grid.count)};
    for_chunks(grid.count, workers, [&](std::size_t i) {
        double t = grid.at(i);
        double acc = 0.0;
        for (std::size_t n = 0; n < distribution.size(); ++n)
            acc += distribution[n] * std::cos(omega[n] * t);
        series.values[i] = std::clamp(-0.5 * acc, -0.5, 0.5);
    });
    return series;
}

AtomDensity reduce_atom(const JointState& state) {
    std::complex<double> eg{0.0, 0.0};
    double ee = 0.0, gg = 0.0;
    for (const auto& a : state.excited) ee += std::norm(a);
    for (const auto& a : state.ground) gg += std::norm(a);
    for (std::size_t n = 0; n < state.excited.size(); ++n)
        eg += state.excited[n] * std::conj(state.ground[n]);
    return {{ee, 0.0}, eg, std::conj(eg), {gg, 0.0}};
}

double linear_entropy(const AtomDensity& rho) {
    return std::clamp(2.0 * (1.0 - rho.purity()), 0.0, 1.0);
}

double field_purity(const JointState& state) {
    const auto& g = state.ground;
    const auto& e = state.excited;
    auto elem = [&](std::size_t n, std::size_t m) {
        std::complex<double> v = g[n] * std::conj(g[m]);
        if (n < e.size() && m < e.size()) v += e[n] * std::conj(e[m]);
        return v;
    };
    double acc = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        acc += std::norm(elem(n, n));
        for (std::size_t m = 0; m < n; ++m) acc += 2.0 * std::norm(elem(n, m));
    }
    return acc;
}

TimeSeries entropy_series(const FockAmplitudes& amps, const TimeGrid& grid, unsigned workers) {
    check_grid(grid);
    auto sq = sqrt_table(amps.c.size());
    TimeSeries series{grid, std::vector<double>(grid.count)};
    for_chunks(grid.count, workers, [&](std::size_t i) {
        series.values[i] = entropy_from(atom_scalars(amps.c, sq, grid.at(i)));
    });
    return series;
}

double mean_linear_entropy(const FockAmplitudes& amps, double lambda_T, double step,
                           unsigned workers) {
    if (!std::isfinite(lambda_T) || !(lambda_T > 0.0)) {
        throw DomainError("mean_linear_entropy: lambda_T must be positive and finite");
    }
    if (!(step > 0.0) || !(step <= 0.05)) {
        throw DomainError(
            "mean_linear_entropy: step must lie in (0, 0.05] so samples resolve the fastest "
            "Rabi oscillation on the truncated space");
    }
    auto count = static_cast<std::size_t>(std::llround(lambda_T / step)) + 1;
    if (count < 2) throw DomainError("mean_linear_entropy: horizon shorter than one step");
    TimeGrid grid{0.0, step, count};
    return trapezoid_mean(entropy_series(amps, grid, workers).values, step);
}

}  // namespace sqjc
