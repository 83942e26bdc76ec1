#include "mu2amp/fock.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace mu2amp::fock {

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CoherentResult coherent_state(Complex alpha, int cutoff) {
    if (cutoff < 0) throw InvalidSpec("coherent_state: cutoff must be >= 0");
    Vector c(cutoff + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= cutoff; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    CoherentResult r;
    r.state.amplitudes = std::move(c);
    r.tail_mass = 1.0 - r.state.norm_sq();
    return r;
}

FockVector number_state(int n, int cutoff) {
    if (n < 0 || n > cutoff) throw InvalidSpec("number_state: need 0 <= n <= cutoff");
    FockVector v;
    v.amplitudes = Vector::Zero(cutoff + 1);
    v.amplitudes[n] = 1.0;
    return v;
}

DensityOperator density_from_vector(const FockVector& v) {
    DensityOperator rho;
    rho.matrix = v.amplitudes * v.amplitudes.adjoint();
    return rho;
}

double top_level_population(const DensityOperator& rho) {
    const int d = rho.cutoff();
    double p = rho.matrix(d, d).real();
    if (d >= 1) p += rho.matrix(d - 1, d - 1).real();
    return p;
}

void require_top_levels_empty(const DensityOperator& rho, double eps_trunc,
                              const char* where) {
    const double p = top_level_population(rho);
    if (p > eps_trunc) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "%s: top-two-level population %.3e exceeds eps_trunc %.3e; "
                      "enlarge the Fock cutoff",
                      where, p, eps_trunc);
        throw CutoffInsufficient(msg);
    }
}

Complex normal_moment(const DensityOperator& rho, int k, int m, double eps_trunc) {
    if (k < 0 || m < 0) throw InvalidSpec("normal_moment: orders must be >= 0");
    const int d = rho.cutoff();
    if (k + m > d) throw InvalidSpec("normal_moment: k+m exceeds cutoff");
    require_top_levels_empty(rho, eps_trunc, "normal_moment");
    // <p|a†^k a^m|q> = sqrt(q!/(q-m)!) sqrt(p!/(p-k)!) delta_{p-k, q-m}
    Complex acc = 0.0;
    for (int q = m; q <= d; ++q) {
        const int p = q - m + k;
        if (p > d) continue;
        double w = 1.0;
        for (int j = 0; j < m; ++j) w *= double(q - j);
        for (int j = 0; j < k; ++j) w *= double(p - j);
        acc += std::sqrt(w) * rho.matrix(q, p);
    }
    return acc;
}

Complex antinormal_moment(const DensityOperator& rho, int m, int k, double eps_trunc) {
    if (k < 0 || m < 0) throw InvalidSpec("antinormal_moment: orders must be >= 0");
    const int d = rho.cutoff();
    if (k + m > d) throw InvalidSpec("antinormal_moment: m+k exceeds cutoff");
    require_top_levels_empty(rho, eps_trunc, "antinormal_moment");
    // a^m a†^k |q> = sqrt((q+k)!/q!) sqrt((q+k)!/(q+k-m)!) |q+k-m>; intermediate
    // level q+k may exceed the cutoff, the matrix element itself is exact.
    Complex acc = 0.0;
    for (int q = 0; q <= d; ++q) {
        const int p = q + k - m;
        if (p < 0 || p > d) continue;
        double w = 1.0;
        for (int j = 1; j <= k; ++j) w *= double(q + j);
        for (int j = 0; j < m; ++j) w *= double(q + k - j);
        acc += std::sqrt(w) * rho.matrix(q, p);
    }
    return acc;
}

QuadratureStats quadrature_stats(const DensityOperator& rho, double eps_trunc) {
    const Complex a1 = normal_moment(rho, 0, 1, eps_trunc);
    const Complex a2 = normal_moment(rho, 0, 2, eps_trunc);
    const double n = normal_moment(rho, 1, 1, eps_trunc).real();
    QuadratureStats s;
    s.mean_x1 = std::sqrt(2.0) * a1.real();
    s.mean_x2 = std::sqrt(2.0) * a1.imag();
    // <x1^2>_sym = Re<a^2> + <a†a> + 1/2, <x2^2>_sym = -Re<a^2> + <a†a> + 1/2
    s.var_x1_sym = a2.real() + n + 0.5 - s.mean_x1 * s.mean_x1;
    s.var_x2_sym = -a2.real() + n + 0.5 - s.mean_x2 * s.mean_x2;
    s.covar_sym = a2.imag() - s.mean_x1 * s.mean_x2;
    return s;
}

double fidelity_coherent(const DensityOperator& rho, Complex beta, double eps_trunc) {
    const CoherentResult b = coherent_state(beta, rho.cutoff());
    // A lossy truncated <beta| is only a problem if rho itself has weight
    // near the cutoff; a state with empty top levels is complete and the
    // overlap with the truncated expansion is exact.
    if (b.tail_mass > eps_trunc && top_level_population(rho) > eps_trunc) {
        throw CutoffInsufficient("fidelity_coherent: truncated <beta| loses mass " +
                                 std::to_string(b.tail_mass) +
                                 " against a state populated near its cutoff");
    }
    const Complex v = b.state.amplitudes.adjoint() * (rho.matrix * b.state.amplitudes);
    return v.real();
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
    if (a.cutoff() != b.cutoff())
        throw InvalidSpec("trace_distance: mismatched cutoffs");
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix - b.matrix, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace mu2amp::fock
