#include "mu2amp/quasiprob.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <vector>

namespace mu2amp::quasiprob {

using fock::Complex;
using fock::DensityOperator;

void GridSpec::validate() const {
    if (re_max <= re_min || im_max <= im_min)
        throw InvalidSpec("GridSpec: max must exceed min on each axis");
    if (n_re < 2 || n_im < 2) throw InvalidSpec("GridSpec: need at least 2 points per axis");
}

double q_function(const DensityOperator& rho, Complex beta, double eps_trunc) {
    return fock::fidelity_coherent(rho, beta, eps_trunc) / std::numbers::pi;
}

QEvaluator q_evaluator(const DensityOperator& rho, double eps_trunc) {
    return [rho, eps_trunc](Complex beta) { return q_function(rho, beta, eps_trunc); };
}

QEvaluator q_rescale(QEvaluator q_in, double g) {
    if (g < 1.0) throw InvalidSpec("q_rescale: g must be >= 1");
    if (g == 1.0) return q_in;
    return [q = std::move(q_in), g](Complex beta) { return q(beta / g) / (g * g); };
}

QGrid evaluate_grid(const QEvaluator& q, const GridSpec& grid, int threads) {
    grid.validate();
    if (threads <= 0) {
        threads = 1;
        if (const char* env = std::getenv("MU2AMP_THREADS")) {
            const int t = std::atoi(env);
            if (t > 0) threads = t;
        }
    }
    QGrid out;
    out.grid = grid;
    out.values.resize(grid.n_re, grid.n_im);
    auto run_rows = [&](int begin, int end) {
        for (int i = begin; i < end; ++i)
            for (int j = 0; j < grid.n_im; ++j) out.values(i, j) = q(grid.point(i, j));
    };
    if (threads == 1) {
        run_rows(0, grid.n_re);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (grid.n_re + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const int b = t * chunk, e = std::min(grid.n_re, b + chunk);
            if (b < e) pool.emplace_back(run_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

Complex grid_antinormal_moment(const QGrid& q, int m, int k) {
    // Fixed row-major accumulation order keeps results independent of how
    // the grid was computed.
    Complex acc = 0.0;
    for (int i = 0; i < q.grid.n_re; ++i) {
        for (int j = 0; j < q.grid.n_im; ++j) {
            const Complex b = q.grid.point(i, j);
            Complex w = 1.0;
            for (int t = 0; t < m; ++t) w *= b;
            for (int t = 0; t < k; ++t) w *= std::conj(b);
            acc += q.values(i, j) * w;
        }
    }
    return acc * q.grid.cell_area();
}

namespace {

struct ScaledMoments {
    Complex a;      // <a>
    Complex a2;     // <a^2>
    double aad;     // <a a†>
    double a2ad2;   // <a^2 a†^2>
};

ScaledMoments output_moments(const DensityOperator& rho_in, double g2, double eps_trunc) {
    // Fourth moments need cutoff >= 4 plus empty guard levels; zero-pad
    // low-cutoff states (exact, they are complete by the cutoff policy).
    const DensityOperator* rho = &rho_in;
    DensityOperator padded;
    if (rho_in.cutoff() < 6) {
        fock::require_top_levels_empty(rho_in, eps_trunc, "output_moments");
        padded.matrix = fock::Matrix::Zero(7, 7);
        padded.matrix.topLeftCorner(rho_in.cutoff() + 1, rho_in.cutoff() + 1) =
            rho_in.matrix;
        rho = &padded;
    }
    ScaledMoments m;
    m.a = g2 * fock::antinormal_moment(*rho, 1, 0, eps_trunc);
    m.a2 = g2 * g2 * fock::antinormal_moment(*rho, 2, 0, eps_trunc);
    m.aad = g2 * g2 * fock::antinormal_moment(*rho, 1, 1, eps_trunc).real();
    m.a2ad2 = std::pow(g2, 4) * fock::antinormal_moment(*rho, 2, 2, eps_trunc).real();
    return m;
}

} // namespace

QuadratureSnr snr_quadratures_antinormal(const DensityOperator& rho_first_stage,
                                         double g2, double p_success, double eps_trunc) {
    const ScaledMoments m = output_moments(rho_first_stage, g2, eps_trunc);
    const double mean_x1 = std::sqrt(2.0) * m.a.real();
    const double mean_x2 = std::sqrt(2.0) * m.a.imag();
    // Antinormal <x1^2> = Re<a^2> + <a a†>, <x2^2> = -Re<a^2> + <a a†>.
    const double var_x1 = m.a2.real() + m.aad - mean_x1 * mean_x1;
    const double var_x2 = -m.a2.real() + m.aad - mean_x2 * mean_x2;
    QuadratureSnr s;
    s.snr_x1 = mean_x1 / std::sqrt(var_x1);
    s.snr_x2 = mean_x1 / std::sqrt(var_x2);
    const double sp = std::sqrt(p_success);
    s.sqrtp_snr_x1 = sp * s.snr_x1;
    s.sqrtp_snr_x2 = sp * s.snr_x2;
    return s;
}

NumberSnr snr_number(const DensityOperator& rho_first_stage, double g2,
                     double p_success, double eps_trunc) {
    const ScaledMoments m = output_moments(rho_first_stage, g2, eps_trunc);
    const double n = m.aad - 1.0;
    const double n2 = m.a2ad2 - 3.0 * n - 2.0;
    const double var = n2 - n * n;
    NumberSnr s;
    s.snr_n = var > 0.0 ? n / std::sqrt(var) : 0.0;
    s.sqrtp_snr_n = std::sqrt(p_success) * s.snr_n;
    return s;
}

} // namespace mu2amp::quasiprob
