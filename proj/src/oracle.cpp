#include "mu2amp/oracle.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "mu2amp/channels.hpp"

namespace mu2amp::oracle {

using fock::Complex;
using fock::DensityOperator;
using fock::Matrix;
using fock::Vector;

ThermalResult thermal_state(double nbar, int cutoff) {
    if (nbar < 0.0) throw InvalidSpec("thermal_state: nbar must be >= 0");
    if (cutoff < 0) throw InvalidSpec("thermal_state: cutoff must be >= 0");
    const double mu2 = nbar + 1.0;
    const double ratio = 1.0 - 1.0 / mu2; // = nbar/(nbar+1)
    std::vector<double> w(cutoff + 1);
    double sum = 0.0, wn = 1.0 / mu2;
    for (int n = 0; n <= cutoff; ++n) {
        w[n] = wn;
        sum += wn;
        wn *= ratio;
    }
    ThermalResult r;
    r.tail_mass = 1.0 - sum;
    r.state.matrix = Matrix::Zero(cutoff + 1, cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) r.state.matrix(n, n) = w[n] / sum;
    return r;
}

namespace {

// One difference sector n_a - n_b = d of the generator r(ab - a†b†),
// indexed by n_b in [nb_min, nb_max]. The generator is real, skew and
// tridiagonal: T[j-1,j] = beta_j, T[j,j-1] = -beta_j.
struct Sector {
    int d = 0;
    int nb_min = 0;
    int nb_max = 0;
    std::vector<double> beta; // beta[j] couples nb = nb_min+j and nb_min+j+1

    Sector(int d_, int da, int db, double r) : d(d_) {
        nb_min = std::max(0, -d);
        nb_max = std::min(db, da - d);
        const int n = nb_max - nb_min + 1;
        beta.resize(n > 0 ? n - 1 : 0);
        for (int j = 0; j + 1 < n; ++j) {
            const double nb = double(nb_min + j + 1);
            beta[j] = r * std::sqrt((nb + d) * nb);
        }
    }

    // The generator is real, so real basis vectors stay real.
    void matvec(const std::vector<double>& v, std::vector<double>& out) const {
        const int n = static_cast<int>(v.size());
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            if (j + 1 < n) acc += beta[j] * v[j + 1];
            if (j > 0) acc -= beta[j - 1] * v[j - 1];
            out[j] = acc;
        }
    }

    // exp(T) v by Taylor series over sub-steps with ||T h|| <= ~4.
    std::vector<double> propagate(std::vector<double> v) const {
        double bmax = 0.0;
        for (double b : beta) bmax = std::max(bmax, b);
        const int nsteps = std::max(1, static_cast<int>(std::ceil(2.0 * bmax / 4.0)));
        const double h = 1.0 / double(nsteps);
        const int n = static_cast<int>(v.size());
        std::vector<double> term(n), next(n), acc(n);
        for (int s = 0; s < nsteps; ++s) {
            acc = v;
            term = v;
            for (int k = 1; k <= 64; ++k) {
                matvec(term, next);
                const double f = h / double(k);
                double tn = 0.0, an = 0.0;
                for (int j = 0; j < n; ++j) {
                    term[j] = f * next[j];
                    acc[j] += term[j];
                    tn += term[j] * term[j];
                    an += acc[j] * acc[j];
                }
                if (tn <= 1e-34 * an) break;
            }
            v = acc;
        }
        return v;
    }
};

} // namespace

DensityOperator two_mode_amplify(const DensityOperator& rho_a, double nbar, double g,
                                 OracleCutoffs cutoffs) {
    if (g < 1.0) throw InvalidSpec("two_mode_amplify: g must be >= 1");
    if (nbar < 0.0) throw InvalidSpec("two_mode_amplify: nbar must be >= 0");

    const int din = rho_a.cutoff() + 1;
    const int out_cut = cutoffs.out > 0
                            ? cutoffs.out
                            : channels::amplified_cutoff(rho_a.cutoff(),
                                                         g * std::sqrt(nbar + 1.0));
    const int out_dim = out_cut + 1;

    if (g - 1.0 < 1e-14) { // identity channel
        DensityOperator out{Matrix::Zero(out_dim, out_dim)};
        const int c = std::min(out_dim, din);
        out.matrix.topLeftCorner(c, c) = rho_a.matrix.topLeftCorner(c, c);
        return out;
    }

    const double r = std::log(g + std::sqrt(g * g - 1.0)); // arccosh
    const int margin = std::max(60, static_cast<int>(std::ceil(10.0 * (nbar + 1.0) * g * g)));
    const int da = cutoffs.primary > 0 ? cutoffs.primary : out_cut + margin;
    const int db = cutoffs.ancilla > 0 ? cutoffs.ancilla : da;

    // Ancilla thermal weights down to negligible mass.
    std::vector<double> sigma_w;
    {
        const double mu2 = nbar + 1.0;
        const double ratio = 1.0 - 1.0 / mu2;
        double wn = 1.0 / mu2;
        while (wn > 1e-16 && static_cast<int>(sigma_w.size()) <= db) {
            sigma_w.push_back(wn);
            wn *= ratio;
        }
    }

    // Spectral decomposition of the input; pure inputs give one component.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_a.matrix);
    const auto& evals = es.eigenvalues();
    const auto& evecs = es.eigenvectors();

    // Cache of evolved ladder columns keyed by (input level m, ancilla level nb0).
    std::map<std::pair<int, int>, std::pair<int, std::vector<double>>> evolved;
    std::map<int, Sector> sectors;
    auto evolve_basis = [&](int m, int nb0) -> const std::pair<int, std::vector<double>>& {
        auto key = std::make_pair(m, nb0);
        auto it = evolved.find(key);
        if (it != evolved.end()) return it->second;
        const int d = m - nb0;
        auto sit = sectors.find(d);
        if (sit == sectors.end()) sit = sectors.emplace(d, Sector(d, da, db, r)).first;
        const Sector& sec = sit->second;
        std::vector<double> v(sec.nb_max - sec.nb_min + 1, 0.0);
        v[nb0 - sec.nb_min] = 1.0;
        auto res = std::make_pair(sec.nb_min, sec.propagate(std::move(v)));
        return evolved.emplace(key, std::move(res)).first->second;
    };

    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (int e = 0; e < evals.size(); ++e) {
        const double lambda = evals[e];
        if (lambda < 1e-15) continue;
        // Support of this pure component.
        std::vector<int> supp;
        for (int m = 0; m < din; ++m)
            if (std::norm(evecs(m, e)) > 1e-30) supp.push_back(m);
        for (int nb0 = 0; nb0 < static_cast<int>(sigma_w.size()); ++nb0) {
            const double weight = lambda * sigma_w[nb0];
            // Evolved joint vector, one sector per populated input level.
            struct Part {
                int d;
                int nb_min;
                const std::vector<double>* v;
                Complex amp;
            };
            std::vector<Part> parts;
            parts.reserve(supp.size());
            for (int m : supp) {
                const auto& ev = evolve_basis(m, nb0);
                parts.push_back({m - nb0, ev.first, &ev.second, evecs(m, e)});
            }
            // Partial trace over the ancilla: only n_b indices shared by two
            // sectors contribute to rho[nb+d1, nb+d2].
            for (const Part& p1 : parts) {
                for (const Part& p2 : parts) {
                    const int lo = std::max(p1.nb_min, p2.nb_min);
                    const int hi = std::min(p1.nb_min + static_cast<int>(p1.v->size()),
                                            p2.nb_min + static_cast<int>(p2.v->size()));
                    const Complex c = weight * p1.amp * std::conj(p2.amp);
                    for (int nb = lo; nb < hi; ++nb) {
                        const int na1 = nb + p1.d, na2 = nb + p2.d;
                        if (na1 >= out_dim || na2 >= out_dim) continue;
                        out(na1, na2) +=
                            c * ((*p1.v)[nb - p1.nb_min] * (*p2.v)[nb - p2.nb_min]);
                    }
                }
            }
        }
    }

    DensityOperator result{std::move(out)};
    if (cutoffs.check_top_levels)
        fock::require_top_levels_empty(result, cutoffs.eps_trunc, "two_mode_amplify");
    return result;
}

} // namespace mu2amp::oracle
