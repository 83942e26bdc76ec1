#pragma once

#include <utility>

#include "mu2amp/fock.hpp"

namespace mu2amp::channels {

/// Primary design parameters of a mu^2-amplifier.
struct AmplifierSpec {
    double mu2 = 1.0;  // noise parameter
    double gain = 1.0; // overall amplitude gain G
    int ncut = 1;      // number cutoff N of the first (immaculate) stage
    double nbar = 0.0; // second-stage added thermal quanta
};

struct StageDesign {
    double g1 = 1.0;          // immaculate-stage gain
    double g2 = 1.0;          // linear-stage gain
    double alpha_tilde = 0.0; // sqrt(N)/g1, operating-region radius
    bool suboptimal = false;  // mu2 < 1 with nbar > 0
};

/// One amplification run.
struct RunRecord {
    fock::DensityOperator rho_out;
    double p_success = 1.0;
    double fidelity = 1.0;
    double pfp = 1.0; // G^2 p F
    AmplifierSpec spec;
    fock::Complex alpha_in = 0.0;
};

struct PipelineCutoffs {
    int first_stage = 0;      // 0 = ncut + 2 (Kraus support plus guard levels)
    int out = 0;              // 0 = auto-grow until the trunc check passes
    double eps_trunc = fock::kEpsTrunc;
};

/// Solve g2^2 = mu^2 (G^2-1)/(nbar+1) + 1, g1 = G/g2.
StageDesign design_stages(const AmplifierSpec& spec);

/// Apply K = P_N g1^n / g1^N to |alpha> and renormalize.
/// Returns the normalized post-selected state (support on 0..N) and the
/// success probability <alpha|K†K|alpha>.
std::pair<fock::FockVector, double> immaculate_apply(fock::Complex alpha, double g1,
                                                     int ncut, int cutoff);

/// Spec default for the amplified output cutoff.
int amplified_cutoff(int in_cutoff, double g);

/// Phase-insensitive linear amplifier: <a> -> g<a>,
/// <Δa†Δa> -> g^2 <Δa†Δa> + (nbar+1)(g^2-1).
/// out_cutoff = 0 grows the cutoff until the top-two-level population is
/// below eps_trunc; an explicit cutoff that fails the check raises
/// CutoffInsufficient.
fock::DensityOperator linear_amp_channel(const fock::DensityOperator& rho, double g,
                                         double nbar, int out_cutoff = 0,
                                         double eps_trunc = fock::kEpsTrunc);

/// The full pipeline: immaculate stage with g1, then the linear stage with
/// g2, nbar. p_success is the first-stage probability only; the second stage
/// is trace preserving.
RunRecord mu2_amplify(fock::Complex alpha, const AmplifierSpec& spec,
                      const PipelineCutoffs& cutoffs = {});

} // namespace mu2amp::channels
