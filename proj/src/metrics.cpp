#include "mu2amp/metrics.hpp"

#include <cmath>

namespace mu2amp::metrics {

namespace {
void check_ordering(SOrder s) {
    if (s.s < -1.0 || s.s > 1.0) throw InvalidSpec("ordering parameter s must lie in [-1, 1]");
    if (s.s == 1.0) throw SingularOrdering("normal ordering (s = +1) gives a singular SNR");
}
} // namespace

double e_trunc(double x, int ncut) {
    if (ncut < 0) throw InvalidSpec("e_trunc: N must be >= 0");
    double term = 1.0, sum = 1.0;
    for (int n = 1; n <= ncut; ++n) {
        term *= x / double(n);
        sum += term;
    }
    return sum;
}

double p_success_exact(double alpha_abs, double g1, int ncut) {
    if (g1 < 1.0) throw InvalidSpec("p_success_exact: g1 must be >= 1");
    const double a2 = alpha_abs * alpha_abs;
    return std::exp(-a2) * e_trunc(g1 * g1 * a2, ncut) / std::pow(g1, 2 * ncut);
}

double fidelity_exact(double alpha_abs, double g1, double gain, int ncut) {
    if (g1 > gain) throw InvalidSpec("fidelity_exact: g1 must not exceed G");
    const double x = g1 * g1 * alpha_abs * alpha_abs;
    return (g1 * g1) / (gain * gain) * std::exp(-x) * e_trunc(x, ncut);
}

double pfp_exact(double alpha_abs, double g1, int ncut) {
    if (g1 < 1.0) throw InvalidSpec("pfp_exact: g1 must be >= 1");
    const double a2 = alpha_abs * alpha_abs;
    const double e = e_trunc(g1 * g1 * a2, ncut);
    return std::exp(-(g1 * g1 + 1.0) * a2) * e * e / std::pow(g1, 2 * (ncut - 1));
}

double pfp_bound(double alpha_abs, double g1) {
    if (g1 < 1.0) throw InvalidSpec("pfp_bound: g1 must be >= 1");
    const double d = g1 - 1.0;
    return g1 * g1 * std::exp(-d * d * alpha_abs * alpha_abs);
}

double pfp_bound_alpha0(double g1) {
    if (g1 <= 1.0) throw InvalidSpec("pfp_bound_alpha0: g1 must exceed 1");
    return std::sqrt(2.0 * std::log(g1)) / (g1 - 1.0);
}

double p_success_region(double mu2, double gain, int ncut) {
    const double G2 = gain * gain;
    return std::pow(mu2 * (G2 - 1.0) + 1.0, ncut) / std::pow(G2, ncut);
}

double pfp_region(double mu2, double gain, int ncut) {
    const double G2 = gain * gain;
    return std::pow(mu2 * (G2 - 1.0) + 1.0, ncut - 1) / std::pow(G2, ncut - 1);
}

double fidelity_mu(double mu2, double gain) {
    return 1.0 / (mu2 * (gain * gain - 1.0) + 1.0);
}

double p_bound_mu(double mu2, double gain) {
    const double G2 = gain * gain;
    return (mu2 * (G2 - 1.0) + 1.0) / G2;
}

double sigma_out_sq(SOrder s, double mu2, double gain) {
    return mu2 * (gain * gain - 1.0) + 0.5 * (1.0 - s.s);
}

double added_noise(SOrder s, double mu2) {
    return mu2 - 0.5 * (1.0 - s.s);
}

double snr_in(SOrder s, double alpha) {
    check_ordering(s);
    return std::sqrt(2.0) * alpha / std::sqrt(0.5 * (1.0 - s.s));
}

double snr_out(SOrder s, double alpha, double mu2, double gain) {
    check_ordering(s);
    return std::sqrt(2.0) * gain * alpha / std::sqrt(sigma_out_sq(s, mu2, gain));
}

double noise_figure(SOrder s, double mu2, double gain, int ncut) {
    check_ordering(s);
    const double si = snr_in(s, 1.0);
    const double so = snr_out(s, 1.0, mu2, gain);
    return si * si / (p_success_region(mu2, gain, ncut) * so * so);
}

BumpReport bump_report(double g1) {
    if (g1 <= 1.0)
        throw InvalidSpec("bump_report: g1 must exceed 1 (ideal amplifier has no bump)");
    const double g2sq = g1 * g1;
    BumpReport r;
    r.alpha_bump = std::sqrt((g2sq - 1.0) / (g2sq * (g2sq + 1.0)));
    const double inv = 1.0 / g2sq;
    r.pfp_peak = (4.0 / std::exp(1.0)) * std::exp(inv) / ((1.0 + inv) * (1.0 + inv));
    r.alpha0 = pfp_bound_alpha0(g1);
    return r;
}

Regime regime_classify(double mu2, double gain, double boundary_tol) {
    const double x = mu2 * gain * gain;
    if (std::abs(x - 1.0) <= boundary_tol) return Regime::Boundary;
    return x < 1.0 ? Regime::ImmaculateDominant : Regime::IdealDominant;
}

} // namespace mu2amp::metrics
