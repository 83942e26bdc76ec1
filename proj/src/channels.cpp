#include "mu2amp/channels.hpp"

#include <cmath>
#include <iostream>
#include <vector>

namespace mu2amp::channels {

using fock::Complex;
using fock::DensityOperator;
using fock::FockVector;
using fock::Matrix;
using fock::Vector;

StageDesign design_stages(const AmplifierSpec& spec) {
    if (spec.gain < 1.0) throw InvalidSpec("design_stages: G must be >= 1");
    if (spec.mu2 < 0.0) throw InvalidSpec("design_stages: mu^2 must be >= 0");
    if (spec.nbar < 0.0) throw InvalidSpec("design_stages: nbar must be >= 0");
    if (spec.ncut < 1) throw InvalidSpec("design_stages: N must be >= 1");
    StageDesign d;
    const double G2 = spec.gain * spec.gain;
    d.g2 = std::sqrt(spec.mu2 * (G2 - 1.0) / (spec.nbar + 1.0) + 1.0);
    d.g1 = spec.gain / d.g2;
    d.alpha_tilde = std::sqrt(double(spec.ncut)) / d.g1;
    if (spec.mu2 < 1.0 && spec.nbar > 0.0) {
        d.suboptimal = true;
        std::cerr << "warning: mu^2 < 1 with nbar > 0 is a suboptimal design"
                     " (nbar = 0 maximizes the success probability)\n";
    }
    return d;
}

std::pair<FockVector, double> immaculate_apply(Complex alpha, double g1, int ncut,
                                               int cutoff) {
    if (ncut < 1) throw InvalidSpec("immaculate_apply: N must be >= 1");
    if (g1 < 1.0) throw InvalidSpec("immaculate_apply: g1 must be >= 1");
    if (cutoff < ncut) throw InvalidSpec("immaculate_apply: cutoff must be >= N");
    // K|alpha> has amplitudes c_n g1^{n-N} for n <= N; c_n exact by recurrence.
    Vector v = Vector::Zero(cutoff + 1);
    Complex c = std::exp(-0.5 * std::norm(alpha));
    double scale = std::pow(g1, -ncut);
    v[0] = c * scale;
    for (int n = 1; n <= ncut; ++n) {
        c *= alpha / std::sqrt(double(n));
        scale *= g1;
        v[n] = c * scale;
    }
    const double p = v.squaredNorm();
    FockVector out;
    out.amplitudes = v / std::sqrt(p);
    return {std::move(out), p};
}

int amplified_cutoff(int in_cutoff, double g) {
    const double d = double(in_cutoff) + 1.0;
    return static_cast<int>(std::ceil(g * g * d + 10.0 * g * std::sqrt(d)));
}

namespace {

// Pure loss with transmissivity eta; exact Kraus sum, output cutoff = input.
Matrix apply_loss(const Matrix& rho, double eta) {
    if (eta >= 1.0) return rho;
    const int d = static_cast<int>(rho.rows());
    Matrix out = Matrix::Zero(d, d);
    // B_k |n> = sqrt(C(n,k) (1-eta)^k eta^{n-k}) |n-k>
    std::vector<double> c(d);
    for (int k = 0; k < d; ++k) {
        double lw = 0.0; // log binomial C(n,k) built by recurrence over n
        bool any = false;
        for (int n = k; n < d; ++n) {
            if (n > k) lw += std::log(double(n)) - std::log(double(n - k));
            c[n] = std::exp(0.5 * (lw + k * std::log1p(-eta) + (n - k) * std::log(eta)));
            any = true;
        }
        if (!any) continue;
        for (int m = k; m < d; ++m)
            for (int n = k; n < d; ++n)
                out(m - k, n - k) += c[m] * c[n] * rho(m, n);
    }
    return out;
}

// Quantum-limited amplifier with gain g on an input block, exact Kraus sum:
// A_k |n> = t^k/sqrt(k!) sqrt((n+k)!/n!) g^{-(n+1)} |n+k>, t^2 = 1 - 1/g^2.
Matrix apply_ideal_amp(const Matrix& rho, double g, int out_dim) {
    const int din = static_cast<int>(rho.rows());
    Matrix out = Matrix::Zero(out_dim, out_dim);
    if (g == 1.0) {
        const int d = std::min(din, out_dim);
        out.topLeftCorner(d, d) = rho.topLeftCorner(d, d);
        return out;
    }
    const double logt = 0.5 * std::log1p(-1.0 / (g * g));
    const double logg = std::log(g);
    std::vector<double> c(din);
    for (int k = 0; k < out_dim; ++k) {
        // log coefficient for input level n: k log t - log(k!)/2
        //   + [log((n+k)!/n!)]/2 - (n+1) log g
        double lf = 0.0; // log((n+k)!/n!) at n=0 is log(k!)
        for (int j = 1; j <= k; ++j) lf += std::log(double(j));
        const double lkf = lf;
        int nmax = std::min(din - 1, out_dim - 1 - k);
        for (int n = 0; n <= nmax; ++n) {
            if (n > 0) lf += std::log(double(n + k)) - std::log(double(n));
            c[n] = std::exp(k * logt - 0.5 * lkf + 0.5 * lf - (n + 1) * logg);
        }
        if (nmax < 0) continue;
        for (int m = 0; m <= nmax; ++m)
            for (int n = 0; n <= nmax; ++n)
                out(m + k, n + k) += c[m] * c[n] * rho(m, n);
    }
    return out;
}

Matrix apply_channel(const Matrix& rho, double g, double nbar, int out_dim) {
    if (nbar == 0.0) return apply_ideal_amp(rho, g, out_dim);
    // Decompose as quantum-limited amp after loss:
    //   eta = g^2 / [(nbar+1)(g^2-1) + 1], g_amp = g/sqrt(eta).
    const double eta = g * g / ((nbar + 1.0) * (g * g - 1.0) + 1.0);
    const double gamp = g / std::sqrt(eta);
    return apply_ideal_amp(apply_loss(rho, eta), gamp, out_dim);
}

} // namespace

DensityOperator linear_amp_channel(const DensityOperator& rho, double g, double nbar,
                                   int out_cutoff, double eps_trunc) {
    if (g < 1.0) throw InvalidSpec("linear_amp_channel: g must be >= 1");
    if (nbar < 0.0) throw InvalidSpec("linear_amp_channel: nbar must be >= 0");
    if (!rho.is_hermitian(1e-9))
        throw InvalidSpec("linear_amp_channel: input is not Hermitian");
    if (out_cutoff > 0) {
        DensityOperator out{apply_channel(rho.matrix, g, nbar, out_cutoff + 1)};
        fock::require_top_levels_empty(out, eps_trunc, "linear_amp_channel");
        return out;
    }
    // Auto mode: start from the default formula and grow until the top
    // levels are empty enough.
    int guess = amplified_cutoff(rho.cutoff(), g * std::sqrt(nbar + 1.0));
    constexpr int kMaxCutoff = 8000;
    while (true) {
        DensityOperator out{apply_channel(rho.matrix, g, nbar, guess + 1)};
        if (fock::top_level_population(out) <= eps_trunc) return out;
        if (guess >= kMaxCutoff)
            throw CutoffInsufficient("linear_amp_channel: cutoff exceeds " +
                                     std::to_string(kMaxCutoff) +
                                     " without passing the trunc check");
        guess = std::min(kMaxCutoff, guess * 3 / 2 + 32);
    }
}

RunRecord mu2_amplify(Complex alpha, const AmplifierSpec& spec,
                      const PipelineCutoffs& cutoffs) {
    const StageDesign d = design_stages(spec);
    RunRecord rec;
    rec.spec = spec;
    rec.alpha_in = alpha;

    // Two spare levels above N keep the exact first-stage state clear of the
    // top-level trunc guard in downstream moment code.
    const int c1 = cutoffs.first_stage > 0 ? cutoffs.first_stage : spec.ncut + 2;
    DensityOperator rho1;
    if (d.g1 > 1.0) {
        auto [state, p] = immaculate_apply(alpha, d.g1, spec.ncut, c1);
        rec.p_success = p;
        rho1 = fock::density_from_vector(state);
    } else {
        // g1 = 1: the first stage is the identity on the truncated support.
        rec.p_success = 1.0;
        const int need = std::max<int>(
            c1, static_cast<int>(std::ceil(std::norm(alpha) + 10.0 * std::abs(alpha))) + 10);
        rho1 = fock::density_from_vector(fock::coherent_state(alpha, need).state);
    }

    rec.rho_out = linear_amp_channel(rho1, d.g2, spec.nbar, cutoffs.out, cutoffs.eps_trunc);
    rec.fidelity = fock::fidelity_coherent(rec.rho_out, spec.gain * alpha, cutoffs.eps_trunc);
    rec.pfp = spec.gain * spec.gain * rec.p_success * rec.fidelity;
    return rec;
}

} // namespace mu2amp::channels
