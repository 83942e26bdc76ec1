#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mu2amp/errors.hpp"

namespace mu2amp::fock {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kEpsNorm = 1e-10;
inline constexpr double kEpsHerm = 1e-12;
inline constexpr double kEpsPsd = 1e-9;
inline constexpr double kEpsTrunc = 1e-10;

/// Pure state as complex amplitudes c_0..c_D over number states.
struct FockVector {
    Vector amplitudes;

    int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
    double norm_sq() const { return amplitudes.squaredNorm(); }
    bool is_normalized(double eps = kEpsNorm) const {
        return std::abs(norm_sq() - 1.0) <= eps;
    }
};

/// Mixed state as a dense complex Hermitian matrix over the same basis.
struct DensityOperator {
    Matrix matrix;

    int cutoff() const { return static_cast<int>(matrix.rows()) - 1; }
    double trace() const { return matrix.trace().real(); }
    bool is_hermitian(double eps = kEpsHerm) const {
        return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= eps;
    }
    double min_eigenvalue() const;
};

/// Means and symmetric-ordered variances of the quadratures x1, x2,
/// with a = (x1 + i x2)/sqrt(2) and [x1, x2] = i.
struct QuadratureStats {
    double mean_x1 = 0.0;
    double mean_x2 = 0.0;
    double var_x1_sym = 0.0;
    double var_x2_sym = 0.0;
    double covar_sym = 0.0;
};

struct CoherentResult {
    FockVector state;
    double tail_mass = 0.0; // 1 - sum |c_n|^2 of the truncated expansion
};

/// Truncated coherent-state amplitudes c_n = e^{-|a|^2/2} a^n/sqrt(n!),
/// built by running recurrence. Tail mass is reported, never an error.
CoherentResult coherent_state(Complex alpha, int cutoff);

/// Number state |n>.
FockVector number_state(int n, int cutoff);

DensityOperator density_from_vector(const FockVector& v);

/// Tr[rho a†^k a^m] from exact ladder matrix elements.
Complex normal_moment(const DensityOperator& rho, int k, int m,
                      double eps_trunc = kEpsTrunc);

/// Tr[rho a^m a†^k], antinormal ordering.
Complex antinormal_moment(const DensityOperator& rho, int m, int k,
                          double eps_trunc = kEpsTrunc);

QuadratureStats quadrature_stats(const DensityOperator& rho,
                                 double eps_trunc = kEpsTrunc);

/// <beta|rho|beta>. Checks that the truncated <beta| loses mass < eps_trunc.
double fidelity_coherent(const DensityOperator& rho, Complex beta,
                         double eps_trunc = kEpsTrunc);

/// 0.5 * tr|A - B| for Hermitian density operators of equal cutoff.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Population in the top two basis levels; the shared cutoff guard.
double top_level_population(const DensityOperator& rho);
void require_top_levels_empty(const DensityOperator& rho, double eps_trunc,
                              const char* where);

} // namespace mu2amp::fock
