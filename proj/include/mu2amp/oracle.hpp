#pragma once

#include "mu2amp/fock.hpp"

namespace mu2amp::oracle {

/// Cutoffs for the joint-space evolution. Internal cutoffs bound the
/// truncated two-mode ladder; the output is the leading out x out block of
/// the partially traced state.
struct OracleCutoffs {
    int primary = 0; // 0 = auto from g, nbar and the input support
    int ancilla = 0; // 0 = auto
    int out = 0;     // 0 = spec default amplified cutoff
    double eps_trunc = fock::kEpsTrunc;
    bool check_top_levels = true;
};

struct ThermalResult {
    fock::DensityOperator state;
    double tail_mass = 0.0;
};

/// Thermal state with mean occupation nbar, diagonal weights
/// (1/mu^2)(1 - 1/mu^2)^n with mu^2 = nbar + 1, renormalized over the cutoff.
ThermalResult thermal_state(double nbar, int cutoff);

/// Ground truth for the amplifier map: Tr_B[S(r) rho (x) sigma S†(r)] with
/// S(r) = exp(r(ab - a†b†)), G = cosh r, sigma thermal with mean nbar.
/// The generator conserves n_a - n_b, so the evolution runs per difference
/// sector with a step-controlled Taylor integrator; unit tests pin it
/// against a brute-force dense exponential on small spaces.
fock::DensityOperator two_mode_amplify(const fock::DensityOperator& rho_a, double nbar,
                                       double g, OracleCutoffs cutoffs = {});

} // namespace mu2amp::oracle
