#include <doctest.h>

#include <cmath>

#include "mu2amp/fock.hpp"
#include "mu2amp/oracle.hpp"

using namespace mu2amp;
using fock::Complex;
using fock::Matrix;

namespace {

// Brute-force reference: dense exponential of the full joint generator
// r(ab - a†b†) by scaling and squaring, for small cutoffs only.
Matrix joint_amplify_dense(const Matrix& rho_a, double nbar, double g, int da, int db) {
    const int na = da + 1, nb = db + 1, dim = na * nb;
    const double r = std::log(g + std::sqrt(g * g - 1.0));
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    auto idx = [&](int ia, int ib) { return ia * nb + ib; };
    for (int ia = 1; ia < na; ++ia)
        for (int ib = 1; ib < nb; ++ib) {
            const double c = r * std::sqrt(double(ia) * double(ib));
            gen(idx(ia - 1, ib - 1), idx(ia, ib)) += c;  // ab
            gen(idx(ia, ib), idx(ia - 1, ib - 1)) -= c;  // -a†b†
        }
    // exp via scaling and squaring with a plain Taylor series
    int s = 0;
    double nrm = gen.cwiseAbs().rowwise().sum().maxCoeff();
    while (nrm > 0.5) {
        nrm /= 2.0;
        ++s;
    }
    Eigen::MatrixXd x = gen / std::pow(2.0, s);
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim), term = u;
    for (int k = 1; k <= 24; ++k) {
        term = (term * x) / double(k);
        u += term;
    }
    for (int i = 0; i < s; ++i) u = u * u;

    // thermal ancilla
    Eigen::VectorXd w(nb);
    const double mu2 = nbar + 1.0;
    double acc = 0.0, wn = 1.0 / mu2;
    for (int n = 0; n < nb; ++n) {
        w[n] = wn;
        acc += wn;
        wn *= 1.0 - 1.0 / mu2;
    }
    w /= acc;

    Matrix joint = Matrix::Zero(dim, dim);
    const int ns = std::min<int>(na, static_cast<int>(rho_a.rows()));
    for (int ia = 0; ia < ns; ++ia)
        for (int ja = 0; ja < ns; ++ja)
            for (int ib = 0; ib < nb; ++ib)
                joint(idx(ia, ib), idx(ja, ib)) = rho_a(ia, ja) * w[ib];
    Matrix evolved = u.cast<Complex>() * joint * u.transpose().cast<Complex>();
    Matrix out = Matrix::Zero(na, na);
    for (int ia = 0; ia < na; ++ia)
        for (int ja = 0; ja < na; ++ja)
            for (int ib = 0; ib < nb; ++ib) out(ia, ja) += evolved(idx(ia, ib), idx(ja, ib));
    return out;
}

} // namespace

TEST_SUITE_BEGIN("oracle");

TEST_CASE("thermal state") {
    auto vac = oracle::thermal_state(0.0, 10);
    CHECK(std::abs(vac.state.matrix(0, 0) - Complex(1.0)) < 1e-15);
    CHECK(vac.tail_mass < 1e-15);

    auto th = oracle::thermal_state(1.0, 60);
    CHECK(fock::normal_moment(th.state, 1, 1).real() == doctest::Approx(1.0).epsilon(1e-9));
    // geometric weight ratio 1 - 1/mu^2
    const double ratio = (th.state.matrix(5, 5) / th.state.matrix(4, 4)).real();
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(oracle::thermal_state(-0.1, 5), InvalidSpec);
}

TEST_CASE("moments of the amplified output") {
    auto vac = fock::density_from_vector(fock::number_state(0, 4));
    for (double g : {1.3, 2.0}) {
        oracle::OracleCutoffs oc;
        oc.out = 140; // thermal tail of the g=2 output needs the headroom
        auto out = oracle::two_mode_amplify(vac, 0.0, g, oc);
        CHECK(std::abs(out.trace() - 1.0) < 1e-8);
        CHECK(fock::normal_moment(out, 1, 1).real() ==
              doctest::Approx(g * g - 1.0).epsilon(1e-8));
        CHECK(out.is_hermitian(1e-10));
        CHECK(out.min_eigenvalue() > -fock::kEpsPsd);
    }

    auto coh = fock::density_from_vector(fock::coherent_state(0.3, 12).state);
    auto out = oracle::two_mode_amplify(coh, 0.0, 2.0, {});
    CHECK(std::abs(fock::normal_moment(out, 0, 1) - Complex(0.6)) < 1e-8);

    // variance law with a thermal ancilla
    auto outs = oracle::two_mode_amplify(coh, 0.5, 1.5, {});
    const Complex mean = fock::normal_moment(outs, 0, 1);
    const double noise = fock::normal_moment(outs, 1, 1).real() - std::norm(mean);
    CHECK(noise == doctest::Approx(1.5 * (1.5 * 1.5 - 1.0)).epsilon(1e-7));
}

TEST_CASE("identity at unit gain") {
    auto coh = fock::density_from_vector(fock::coherent_state(Complex(0.2, 0.1), 12).state);
    oracle::OracleCutoffs oc;
    oc.out = 12;
    oc.check_top_levels = false;
    auto out = oracle::two_mode_amplify(coh, 0.0, 1.0, oc);
    CHECK(fock::trace_distance(out, coh) < 1e-14);
}

TEST_CASE("sector propagation matches dense joint exponential") {
    const int da = 24, db = 24;
    auto in = fock::density_from_vector(fock::coherent_state(Complex(0.4, 0.15), 6).state);
    // mixed input too: blend two coherent projectors
    Matrix mix = 0.6 * in.matrix +
                 0.4 * fock::density_from_vector(fock::coherent_state(-0.3, 6).state).matrix;
    for (double nbar : {0.0, 0.3}) {
        for (const Matrix& rho_in : {in.matrix, mix}) {
            const double g = 1.3;
            Matrix ref = joint_amplify_dense(rho_in, nbar, g, da, db);
            oracle::OracleCutoffs oc;
            oc.primary = da;
            oc.ancilla = db;
            oc.out = da;
            oc.check_top_levels = false;
            auto fast = oracle::two_mode_amplify(fock::DensityOperator{rho_in}, nbar, g, oc);
            CHECK(fock::trace_distance(fast, fock::DensityOperator{ref}) < 1e-12);
        }
    }
}

TEST_CASE("ancilla cutoff convergence") {
    auto coh = fock::density_from_vector(fock::coherent_state(0.3, 10).state);
    oracle::OracleCutoffs a;
    a.primary = 160;
    a.ancilla = 160;
    a.out = 100;
    a.check_top_levels = false;
    oracle::OracleCutoffs b = a;
    b.ancilla = 240;
    auto oa = oracle::two_mode_amplify(coh, 0.5, 1.7, a);
    auto ob = oracle::two_mode_amplify(coh, 0.5, 1.7, b);
    CHECK(std::abs(fock::normal_moment(oa, 1, 1) - fock::normal_moment(ob, 1, 1)) < 1e-9);
    CHECK(std::abs(fock::normal_moment(oa, 0, 1) - fock::normal_moment(ob, 0, 1)) < 1e-9);
}

TEST_SUITE_END();
