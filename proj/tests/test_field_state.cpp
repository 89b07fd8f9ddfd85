#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "sqjc/errors.hpp"
#include "sqjc/field_state.hpp"
#include "sqjc/numerics.hpp"
#include "support/reference_distribution.hpp"

using namespace sqjc;
using sqjc_test::distribution_moments;
using sqjc_test::log_poisson_pmf;
using sqjc_test::log_reference_p;

namespace {

std::string thrown_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

double kahan_total(const std::vector<double>& v) {
    KahanSum s;
    for (double x : v) s.add(x);
    return s.value();
}

}  // namespace

TEST_CASE("parameter derivation from the mean photon numbers") {
    SqueezeParams coherent = params_from_means(49.0, 0.0);
    CHECK(coherent.alpha == 7.0);
    CHECK(coherent.mu == 1.0);
    CHECK(coherent.nu == 0.0);
    CHECK(coherent.beta == 7.0);

    SqueezeParams vacuum = params_from_means(0.0, 0.0);
    CHECK(vacuum.alpha == 0.0);
    CHECK(vacuum.beta == 0.0);

    SqueezeParams squeezed = params_from_means(49.0, 1.0);
    CHECK(squeezed.nu == 1.0);
    CHECK(squeezed.mu == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(squeezed.beta == doctest::Approx(7.0 * (std::sqrt(2.0) + 1.0)).epsilon(1e-15));
    CHECK(squeezed.mean() == 50.0);

    for (double ns : {0.0, 0.3, 1.0, 10.0, 100.0}) {
        SqueezeParams p = params_from_means(2.0, ns);
        CHECK(p.mu * p.mu - p.nu * p.nu == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("parameter validation names the offending field") {
    CHECK_THROWS_AS(params_from_means(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(params_from_means(0.0, -0.5), DomainError);
    CHECK_THROWS_AS(params_from_means(std::nan(""), 0.0), DomainError);
    CHECK(thrown_message([] { params_from_means(-1.0, 0.0); }).find("N_C") !=
          std::string::npos);
    CHECK(thrown_message([] { params_from_means(0.0, -0.5); }).find("N_S") !=
          std::string::npos);
}

TEST_CASE("vacuum amplitudes are the single basis state") {
    FockAmplitudes amps = amplitudes(params_from_means(0.0, 0.0));
    CHECK(amps.n_max == 0);
    CHECK(amps.c.size() == 1);
    CHECK(amps.c[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amps.tail_bound <= 1e-12);
    CHECK(choose_cutoff(params_from_means(0.0, 0.0)) == 0);
}

TEST_CASE("coherent amplitudes reduce to the Poisson ladder") {
    FockAmplitudes amps = amplitudes(params_from_means(49.0, 0.0));
    for (std::size_t n = 0; n <= amps.n_max; ++n) {
        double expected = std::exp(0.5 * log_poisson_pmf(49.0, n));
        CHECK(amps.c[n] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("squeezed vacuum has exactly vanishing odd amplitudes") {
    FockAmplitudes amps = amplitudes(params_from_means(0.0, 5.0));
    REQUIRE(amps.n_max >= 10);
    for (std::size_t n = 1; n <= amps.n_max; n += 2) CHECK(std::fabs(amps.c[n]) < 1e-14);
    double even_mass = 0.0;
    for (std::size_t n = 0; n <= amps.n_max; n += 2) even_mass += amps.c[n] * amps.c[n];
    CHECK(even_mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("recurrence amplitudes match the direct log-space evaluation") {
    const double grid[][2] = {{49.0, 1.0}, {49.0, 10.0}, {100.0, 2.0}, {1.0, 0.5},
                              {10.0, 5.0}, {0.0, 5.0},   {49.0, 0.0}};
    for (auto [nc, ns] : grid) {
        CAPTURE(nc);
        CAPTURE(ns);
        FockAmplitudes amps = amplitudes(params_from_means(nc, ns));
        for (std::size_t n = 0; n <= amps.n_max; ++n) {
            double direct = std::exp(log_reference_p(nc, ns, n));
            if (direct <= 1e-300) continue;
            double mine = amps.c[n] * amps.c[n];
            CAPTURE(n);
            CHECK(std::fabs(mine - direct) <= 1e-10 * direct);
        }
    }
}

TEST_CASE("normalization is certified on the full parameter grid") {
    const double values[] = {0.0, 1.0, 2.0, 5.0, 10.0, 49.0, 100.0};
    for (double nc : values) {
        for (double ns : values) {
            CAPTURE(nc);
            CAPTURE(ns);
            FockAmplitudes amps = amplitudes(params_from_means(nc, ns));
            double sum = kahan_total(photon_distribution(amps));
            CHECK(sum >= 1.0 - 1e-10);
            CHECK(sum <= 1.0 + 10.0 * std::numeric_limits<double>::epsilon() *
                                   static_cast<double>(amps.n_max + 1));
            CHECK(amps.tail_bound >= 0.0);
            CHECK(amps.tail_bound < 1e-12);
        }
    }
}

TEST_CASE("cutoff certifies the discarded tail") {
    std::size_t n_poisson = choose_cutoff(params_from_means(49.0, 0.0), 1e-12);
    double kept = 0.0;
    KahanSum sum;
    for (std::size_t n = 0; n <= n_poisson; ++n) sum.add(std::exp(log_poisson_pmf(49.0, n)));
    kept = sum.value();
    CHECK(1.0 - kept < 1e-12);
    CHECK(n_poisson >= 90);
    CHECK(n_poisson <= 125);

    std::size_t n_squeezed = choose_cutoff(params_from_means(49.0, 10.0), 1e-12);
    FockAmplitudes amps = amplitudes(params_from_means(49.0, 10.0), 1e-12);
    CHECK(n_squeezed == amps.n_max);
    CHECK(kahan_total(photon_distribution(amps)) >= 1.0 - 1e-12);
}

TEST_CASE("tail tolerance is validated") {
    SqueezeParams p = params_from_means(1.0, 0.0);
    CHECK_THROWS_AS(amplitudes(p, 0.0), DomainError);
    CHECK_THROWS_AS(amplitudes(p, 1.0), DomainError);
    CHECK_THROWS_AS(log_amplitudes(p, -1e-3), DomainError);
}

TEST_CASE("closed-form moments at the reference points") {
    FieldMoments poisson = moments(params_from_means(49.0, 0.0));
    CHECK(poisson.mean == 49.0);
    CHECK(poisson.variance == doctest::Approx(49.0).epsilon(1e-14));
    CHECK(poisson.mandel_q == doctest::Approx(0.0).epsilon(1e-14));

    FieldMoments squeezed_vac = moments(params_from_means(0.0, 3.0));
    CHECK(squeezed_vac.mean == 3.0);
    CHECK(squeezed_vac.variance == doctest::Approx(24.0).epsilon(1e-14));

    FieldMoments mixed = moments(params_from_means(49.0, 1.0));
    CHECK(mixed.mean == 50.0);
    // variance is exactly 151 - 98*sqrt(2); the double below is its correct rounding
    CHECK(mixed.variance == doctest::Approx(12.407070887436685).epsilon(1e-14));
    CHECK(mixed.mandel_q == doctest::Approx(-0.7518585822512663).epsilon(1e-14));

    FieldMoments vac = moments(params_from_means(0.0, 0.0));
    CHECK(vac.mean == 0.0);
    CHECK(vac.mandel_q == 0.0);
}

TEST_CASE("closed-form moments match the sampled distribution") {
    const double grid[][2] = {{1.0, 0.1},  {10.0, 1.0}, {49.0, 1.0}, {49.0, 10.0},
                              {100.0, 2.0}, {100.0, 10.0}, {0.0, 5.0}};
    for (auto [nc, ns] : grid) {
        CAPTURE(nc);
        CAPTURE(ns);
        FieldMoments closed = moments(params_from_means(nc, ns));
        auto sampled = distribution_moments(photon_distribution(params_from_means(nc, ns)));
        CHECK(std::fabs(sampled.mean - closed.mean) <= 1e-8 * closed.mean);
        CHECK(std::fabs(sampled.variance - closed.variance) <= 1e-8 * closed.variance);
    }
}

TEST_CASE("mild squeezing localizes the distribution") {
    auto p_coherent = photon_distribution(params_from_means(49.0, 0.0));
    auto p_squeezed = photon_distribution(params_from_means(49.0, 1.0));
    double peak_coherent = 0.0, peak_squeezed = 0.0;
    std::size_t mode_coherent = 0;
    for (std::size_t n = 0; n < p_coherent.size(); ++n) {
        if (p_coherent[n] > peak_coherent) {
            peak_coherent = p_coherent[n];
            mode_coherent = n;
        }
    }
    for (double p : p_squeezed) peak_squeezed = std::max(peak_squeezed, p);

    CHECK(peak_coherent == doctest::Approx(0.056895).epsilon(2e-4));
    CHECK((mode_coherent == 48 || mode_coherent == 49));
    CHECK(peak_squeezed == doctest::Approx(0.116800).epsilon(2e-4));
    CHECK(peak_squeezed / peak_coherent == doctest::Approx(2.0529).epsilon(1e-3));

    double sd = std::sqrt(distribution_moments(p_squeezed).variance);
    CHECK(sd == doctest::Approx(3.52237).epsilon(1e-3));
    CHECK(sd < 7.0);
}

TEST_CASE("linear-space seed underflow is rejected toward the log path") {
    SqueezeParams big = params_from_means(1600.0, 0.0);
    CHECK_THROWS_AS(amplitudes(big), DomainError);
    CHECK(thrown_message([&] { amplitudes(big); }).find("log_amplitudes") !=
          std::string::npos);

    LogFockAmplitudes logs = log_amplitudes(big);
    auto p = photon_distribution(logs);
    double sum = kahan_total(p);
    CHECK(sum >= 1.0 - 1e-10);
    auto sampled = distribution_moments(p);
    CHECK(std::fabs(sampled.mean - 1600.0) <= 1e-8 * 1600.0);
    CHECK(std::fabs(sampled.variance - 1600.0) <= 1e-8 * 1600.0);

    auto direct = photon_distribution(big);  // transparent fallback
    CHECK(direct.size() == p.size());
    CHECK(direct[logs.n_max / 2] == p[logs.n_max / 2]);
}

TEST_CASE("log-space and linear-space amplitudes agree where both exist") {
    SqueezeParams p = params_from_means(49.0, 1.0);
    FockAmplitudes lin = amplitudes(p);
    LogFockAmplitudes logs = log_amplitudes(p);
    std::size_t shared = std::min(lin.n_max, logs.n_max);
    for (std::size_t n = 0; n <= shared; ++n) {
        if (lin.c[n] == 0.0) continue;
        double from_log = std::exp(logs.log_abs_c[n]);
        CHECK(std::fabs(from_log - std::fabs(lin.c[n])) <= 1e-12 * std::fabs(lin.c[n]));
        CHECK(logs.sign[n] == (lin.c[n] > 0.0 ? 1 : -1));
    }
}
