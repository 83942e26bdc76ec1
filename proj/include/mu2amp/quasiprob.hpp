#pragma once

#include <functional>

#include <Eigen/Dense>

#include "mu2amp/fock.hpp"

namespace mu2amp::quasiprob {

/// Rectangular phase-space sampling: uniform n_re x n_im grid of beta values.
struct GridSpec {
    double re_min = -3.0, re_max = 3.0;
    double im_min = -3.0, im_max = 3.0;
    int n_re = 201, n_im = 201;

    void validate() const;
    double re_step() const { return (re_max - re_min) / double(n_re - 1); }
    double im_step() const { return (im_max - im_min) / double(n_im - 1); }
    double cell_area() const { return re_step() * im_step(); }
    fock::Complex point(int i_re, int i_im) const {
        return {re_min + i_re * re_step(), im_min + i_im * im_step()};
    }
};

struct QGrid {
    GridSpec grid;
    Eigen::MatrixXd values; // n_re x n_im, Q(beta)

    double integral() const { return values.sum() * grid.cell_area(); }
};

using QEvaluator = std::function<double(fock::Complex)>;

/// Q(beta) = <beta|rho|beta>/pi.
double q_function(const fock::DensityOperator& rho, fock::Complex beta,
                  double eps_trunc = fock::kEpsTrunc);

/// Capture rho in an evaluator (shared code path with q_function).
QEvaluator q_evaluator(const fock::DensityOperator& rho,
                       double eps_trunc = fock::kEpsTrunc);

/// Ideal-amplifier transform at the Q level: Q_out(b) = Q_in(b/g)/g^2.
QEvaluator q_rescale(QEvaluator q_in, double g);

/// Evaluate on a grid. Points are independent; threads > 1 splits rows with
/// a fixed assignment so output is bit-stable across thread counts.
/// threads = 0 reads MU2AMP_THREADS (default 1).
QGrid evaluate_grid(const QEvaluator& q, const GridSpec& grid, int threads = 0);

/// Antinormal moment <a^m a†^k> = integral of Q(b) b^m conj(b)^k by Riemann
/// sum over the grid.
fock::Complex grid_antinormal_moment(const QGrid& q, int m, int k);

struct QuadratureSnr {
    double snr_x1 = 0.0;
    double snr_x2 = 0.0;
    double sqrtp_snr_x1 = 0.0;
    double sqrtp_snr_x2 = 0.0;
};

/// Antinormal-ordered quadrature SNRs of the pipeline output, obtained from
/// the first-stage state by Q-moment scaling (<a^m a†^k> -> g2^{m+k} x).
/// Both SNRs use the amplitude-quadrature mean, <x1>/sqrt(V_q) for
/// q in {x1, x2}; the input phase is assumed rotated to the real axis.
QuadratureSnr snr_quadratures_antinormal(const fock::DensityOperator& rho_first_stage,
                                         double g2, double p_success,
                                         double eps_trunc = fock::kEpsTrunc);

struct NumberSnr {
    double snr_n = 0.0;
    double sqrtp_snr_n = 0.0;
};

/// <n>/sqrt(Var n) of the pipeline output from scaled antinormal moments;
/// the input reference SNR is |alpha|.
NumberSnr snr_number(const fock::DensityOperator& rho_first_stage, double g2,
                     double p_success, double eps_trunc = fock::kEpsTrunc);

} // namespace mu2amp::quasiprob
