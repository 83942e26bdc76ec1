#include <doctest.h>

#include <cmath>

#include "mu2amp/metrics.hpp"

using namespace mu2amp;
using metrics::SOrder;

namespace {
constexpr double kG1Perfect9 = 1.405563856997455; // first-stage gain, mu^2=1/2, G=9
}

TEST_SUITE_BEGIN("metrics");

TEST_CASE("truncated exponential") {
    CHECK(metrics::e_trunc(0.0, 7) == 1.0);
    CHECK(metrics::e_trunc(1.0, 2) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(metrics::e_trunc(1.0, 20) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("exact success probability") {
    CHECK(metrics::p_success_exact(0.0, 3.0, 2) == doctest::Approx(1.0 / 81.0).epsilon(1e-15));
    CHECK(metrics::p_success_exact(0.11, 9.0, 1) ==
          doctest::Approx(0.0241516686461744).epsilon(1e-13));
    CHECK(metrics::p_success_exact(0.7, 1.0, 40) == doctest::Approx(1.0).epsilon(1e-14));
    // tail decay: dominated by e^{-|a|^2} a^{2N}
    CHECK(metrics::p_success_exact(8.0, 2.0, 2) < 1e-15);
}

TEST_CASE("exact fidelity") {
    CHECK(metrics::fidelity_exact(0.0, 2.0, 9.0, 1) == doctest::Approx(4.0 / 81.0));
    CHECK(metrics::fidelity_exact(0.0, kG1Perfect9, 9.0, 1) ==
          doctest::Approx(1.0 / 41.0).epsilon(1e-13));
    CHECK(metrics::fidelity_exact(0.0, 9.0, 9.0, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(metrics::fidelity_exact(0.1, 3.0, 2.0, 1), InvalidSpec);
}

TEST_CASE("exact probability-fidelity product") {
    CHECK(metrics::pfp_exact(0.0, 5.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(metrics::pfp_exact(0.10975, 9.0, 1) ==
          doctest::Approx(1.45368229997609).epsilon(1e-12));
    CHECK(metrics::pfp_exact(0.0, 3.0, 2) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("deterministic skip-stage bound") {
    CHECK(metrics::pfp_bound(1.7, 1.0) == 1.0);
    CHECK(metrics::pfp_bound(0.0, 9.0) == 81.0);
    CHECK(metrics::pfp_bound_alpha0(9.0) ==
          doctest::Approx(0.262036768492051).epsilon(1e-13));
    // bound theorem on a grid
    for (double g1 : {1.1, kG1Perfect9, 2.0, 9.0})
        for (int n : {1, 2, 3})
            for (int i = 0; i <= 300; ++i) {
                const double a = 3.0 * i / 300.0;
                CHECK(metrics::pfp_exact(a, g1, n) <= metrics::pfp_bound(a, g1) + 1e-12);
            }
}

TEST_CASE("operating-region formulas") {
    CHECK(metrics::p_success_region(1.0, 7.0, 3) == doctest::Approx(1.0));
    CHECK(metrics::p_success_region(0.5, 9.0, 2) ==
          doctest::Approx(0.256210943453742).epsilon(1e-13));
    CHECK(metrics::p_success_region(0.0, 9.0, 2) == doctest::Approx(std::pow(81.0, -2)));

    CHECK(metrics::pfp_region(0.37, 5.0, 1) == 1.0);
    CHECK(metrics::pfp_region(0.0, 9.0, 2) == doctest::Approx(1.0 / 81.0));
    CHECK(metrics::pfp_region(0.5, 9.0, 2) == doctest::Approx(41.0 / 81.0).epsilon(1e-14));

    CHECK(metrics::fidelity_mu(1.0, 9.0) == doctest::Approx(1.0 / 81.0));
    CHECK(metrics::fidelity_mu(0.0, 4.0) == 1.0);
    CHECK(metrics::fidelity_mu(0.5, 9.0) == doctest::Approx(1.0 / 41.0));

    CHECK(metrics::p_bound_mu(1.0, 3.0) == doctest::Approx(1.0));
    CHECK(metrics::p_bound_mu(0.0, 9.0) == doctest::Approx(1.0 / 81.0));
    CHECK(metrics::p_bound_mu(0.5, 9.0) == doctest::Approx(41.0 / 81.0));

    // region value at alpha = 0 equals the exact pipeline product when the
    // stage gains come from the design rule
    const double g1 = kG1Perfect9;
    CHECK(metrics::pfp_exact(0.0, g1, 2) ==
          doctest::Approx(metrics::pfp_region(0.5, 9.0, 2)).epsilon(1e-12));

    // monotonic in mu^2 at the origin
    double prev = 0.0;
    for (double mu2 = 0.0; mu2 <= 1.0; mu2 += 0.05) {
        const double p = metrics::p_success_region(mu2, 9.0, 2);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("s-ordered variances and added noise") {
    CHECK(metrics::added_noise(SOrder{-1.0}, 1.0) == doctest::Approx(0.0));
    CHECK(metrics::added_noise(SOrder{0.0}, 0.5) == doctest::Approx(0.0));
    CHECK(metrics::added_noise(SOrder{1.0}, 0.0) == doctest::Approx(0.0));
    CHECK(metrics::sigma_out_sq(SOrder{-1.0}, 1.0, 3.0) == doctest::Approx(9.0));
}

TEST_CASE("SNRs and noise figure") {
    // antinormal, ideal: output SNR equals input SNR at any gain
    for (double g : {1.0, 2.0, 9.0})
        CHECK(metrics::snr_out(SOrder{-1.0}, 0.6, 1.0, g) ==
              doctest::Approx(metrics::snr_in(SOrder{-1.0}, 0.6)).epsilon(1e-14));
    // symmetric, ideal, high gain: ratio -> 1/sqrt(2)
    CHECK(metrics::snr_out(SOrder{0.0}, 0.6, 1.0, 1e4) /
              metrics::snr_in(SOrder{0.0}, 0.6) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    CHECK(metrics::snr_in(SOrder{-1.0}, 0.9) == doctest::Approx(std::sqrt(2.0) * 0.9));
    CHECK_THROWS_AS(metrics::snr_in(SOrder{1.0}, 0.5), SingularOrdering);
    CHECK_THROWS_AS(metrics::noise_figure(SOrder{1.0}, 0.5, 9.0, 1), SingularOrdering);

    CHECK(metrics::noise_figure(SOrder{-1.0}, 1.0, 7.0, 3) == doctest::Approx(1.0));
    CHECK(metrics::noise_figure(SOrder{0.0}, 1.0, 9.0, 1) ==
          doctest::Approx(2.0 - 1.0 / 81.0).epsilon(1e-13));
    CHECK(metrics::noise_figure(SOrder{-1.0}, 0.0, 9.0, 2) == doctest::Approx(81.0));
    // antinormal noise figure is the inverse PFP
    for (double mu2 : {0.0, 0.3, 0.5, 1.0})
        for (int n : {1, 2, 3})
            CHECK(metrics::noise_figure(SOrder{-1.0}, mu2, 9.0, n) *
                      metrics::pfp_region(mu2, 9.0, n) ==
                  doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bump analytics") {
    auto b9 = metrics::bump_report(9.0);
    CHECK(b9.alpha_bump == doctest::Approx(0.109747732961066).epsilon(1e-13));
    CHECK(b9.pfp_peak == doctest::Approx(1.45368230058117).epsilon(1e-12));
    CHECK(b9.alpha0 == doctest::Approx(0.262036768492051).epsilon(1e-13));
    CHECK(b9.alpha_bump <= 1.0 / 9.0); // inside the operating region (N=1)
    // peak value consistent with the exact curve at the peak location
    CHECK(metrics::pfp_exact(b9.alpha_bump, 9.0, 1) ==
          doctest::Approx(b9.pfp_peak).epsilon(1e-12));

    auto bp = metrics::bump_report(kG1Perfect9);
    CHECK(bp.alpha_bump == doctest::Approx(0.407379808084312).epsilon(1e-12));
    CHECK(bp.pfp_peak == doctest::Approx(1.0760785064948).epsilon(1e-12));

    CHECK_THROWS_AS(metrics::bump_report(1.0), InvalidSpec);
}

TEST_CASE("regime classification") {
    CHECK(metrics::regime_classify(1.0, 2.0) == metrics::Regime::IdealDominant);
    CHECK(metrics::regime_classify(0.5, std::sqrt(2.0)) == metrics::Regime::Boundary);
    CHECK(metrics::regime_classify(0.0, 100.0) == metrics::Regime::ImmaculateDominant);
}

TEST_CASE("extreme-regime limits of the region PFP") {
    // mu^2 G^2 = 1e-4: value -> 1/G^{2(N-1)}
    {
        const double mu2 = 1e-8, G = 100.0;
        const double v = metrics::pfp_region(mu2, G, 2);
        CHECK(std::abs(v - 1.0 / (G * G)) <= 0.01 / (G * G));
    }
    // mu^2 G^2 = 1e4: value -> mu^{2(N-1)}
    {
        const double mu2 = 0.01, G = 1000.0;
        const double v = metrics::pfp_region(mu2, G, 2);
        CHECK(std::abs(v - mu2) <= 0.01 * mu2);
    }
}

TEST_SUITE_END();
