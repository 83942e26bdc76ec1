#pragma once

#include "mu2amp/errors.hpp"

namespace mu2amp::metrics {

/// Quasiprobability ordering parameter: s = +1 normal, 0 symmetric,
/// -1 antinormal.
struct SOrder {
    double s = -1.0;
};

enum class Regime { ImmaculateDominant, IdealDominant, Boundary };

struct BumpReport {
    double alpha_bump = 0.0; // input amplitude of the N=1 PFP peak
    double pfp_peak = 0.0;   // PFP value at the peak
    double alpha0 = 0.0;     // amplitude where PFP0 crosses 1
};

/// Truncated exponential e_N(x) = sum_{n<=N} x^n/n!.
double e_trunc(double x, int ncut);

/// p_check = e^{-|a|^2} e_N(g1^2 |a|^2) / g1^{2N}.
double p_success_exact(double alpha_abs, double g1, int ncut);

/// F = (g1^2/G^2) e^{-g1^2 |a|^2} e_N(g1^2 |a|^2).
double fidelity_exact(double alpha_abs, double g1, double gain, int ncut);

/// G^2 p F = e^{-(g1^2+1)|a|^2} e_N^2(g1^2 |a|^2) / g1^{2(N-1)}.
/// Independent of the overall gain.
double pfp_exact(double alpha_abs, double g1, int ncut);

/// PFP0 = g1^2 e^{-(g1-1)^2 |a|^2}, the deterministic skip-the-first-stage
/// performance and an exact upper bound on pfp_exact.
double pfp_bound(double alpha_abs, double g1);

/// Amplitude where PFP0 crosses 1: sqrt(2 ln g1)/(g1 - 1). Requires g1 > 1.
double pfp_bound_alpha0(double g1);

/// Operating-region success probability [mu^2 (G^2-1) + 1]^N / G^{2N}.
double p_success_region(double mu2, double gain, int ncut);

/// Operating-region PFP [mu^2 (G^2-1) + 1]^{N-1} / G^{2(N-1)}; equals 1 for
/// N = 1 regardless of mu^2.
double pfp_region(double mu2, double gain, int ncut);

/// F(mu^2) = 1 / (mu^2 (G^2-1) + 1).
double fidelity_mu(double mu2, double gain);

/// Uncertainty-principle bound p_check <= (mu^2 (G^2-1) + 1) / G^2.
double p_bound_mu(double mu2, double gain);

/// s-ordered output variance mu^2 (G^2-1) + (1-s)/2 for a coherent input.
double sigma_out_sq(SOrder s, double mu2, double gain);

/// High-gain added noise A(s) = mu^2 - (1-s)/2.
double added_noise(SOrder s, double mu2);

double snr_in(SOrder s, double alpha);
double snr_out(SOrder s, double alpha, double mu2, double gain);

/// NF(s) = SNR_in^2 / (p_check SNR_out^2) with the operating-region
/// success probability; for s = -1 this is 1/pfp_region.
double noise_figure(SOrder s, double mu2, double gain, int ncut);

/// N=1 bump analytics: peak location, peak value, and the PFP0 crossing.
BumpReport bump_report(double g1);

Regime regime_classify(double mu2, double gain, double boundary_tol = 1e-12);

} // namespace mu2amp::metrics
