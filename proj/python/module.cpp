#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mu2amp/channels.hpp"
#include "mu2amp/fock.hpp"
#include "mu2amp/metrics.hpp"
#include "mu2amp/oracle.hpp"
#include "mu2amp/quasiprob.hpp"

namespace py = pybind11;
using namespace mu2amp;

PYBIND11_MODULE(_mu2amp, m) {
    m.doc() = "Reduced-noise probabilistic linear amplifier models";

    py::register_exception<CutoffInsufficient>(m, "CutoffInsufficient", PyExc_RuntimeError);
    py::register_exception<SingularOrdering>(m, "SingularOrdering", PyExc_ValueError);

    // fock
    m.def(
        "coherent_state",
        [](fock::Complex alpha, int cutoff) {
            auto r = fock::coherent_state(alpha, cutoff);
            return py::make_tuple(r.state.amplitudes, r.tail_mass);
        },
        py::arg("alpha"), py::arg("cutoff"),
        "Truncated coherent amplitudes and the reported tail mass");
    m.def(
        "density_from_vector",
        [](const fock::Vector& v) {
            return fock::density_from_vector(fock::FockVector{v}).matrix;
        },
        py::arg("amplitudes"));
    m.def(
        "normal_moment",
        [](const fock::Matrix& rho, int k, int mm) {
            return fock::normal_moment(fock::DensityOperator{rho}, k, mm);
        },
        py::arg("rho"), py::arg("k"), py::arg("m"), "Tr[rho a†^k a^m]");
    m.def(
        "antinormal_moment",
        [](const fock::Matrix& rho, int mm, int k) {
            return fock::antinormal_moment(fock::DensityOperator{rho}, mm, k);
        },
        py::arg("rho"), py::arg("m"), py::arg("k"), "Tr[rho a^m a†^k]");
    m.def(
        "fidelity_coherent",
        [](const fock::Matrix& rho, fock::Complex beta) {
            return fock::fidelity_coherent(fock::DensityOperator{rho}, beta);
        },
        py::arg("rho"), py::arg("beta"));
    m.def(
        "trace_distance",
        [](const fock::Matrix& a, const fock::Matrix& b) {
            return fock::trace_distance(fock::DensityOperator{a}, fock::DensityOperator{b});
        },
        py::arg("a"), py::arg("b"));

    // metrics
    m.def("e_trunc", &metrics::e_trunc, py::arg("x"), py::arg("ncut"));
    m.def("p_success_exact", &metrics::p_success_exact, py::arg("alpha"), py::arg("g1"),
          py::arg("ncut"));
    m.def("fidelity_exact", &metrics::fidelity_exact, py::arg("alpha"), py::arg("g1"),
          py::arg("gain"), py::arg("ncut"));
    m.def("pfp_exact", &metrics::pfp_exact, py::arg("alpha"), py::arg("g1"), py::arg("ncut"));
    m.def("pfp_bound", &metrics::pfp_bound, py::arg("alpha"), py::arg("g1"));
    m.def("p_success_region", &metrics::p_success_region, py::arg("mu2"), py::arg("gain"),
          py::arg("ncut"));
    m.def("pfp_region", &metrics::pfp_region, py::arg("mu2"), py::arg("gain"), py::arg("ncut"));
    m.def("fidelity_mu", &metrics::fidelity_mu, py::arg("mu2"), py::arg("gain"));
    m.def(
        "noise_figure",
        [](double s, double mu2, double gain, int ncut) {
            return metrics::noise_figure(metrics::SOrder{s}, mu2, gain, ncut);
        },
        py::arg("s"), py::arg("mu2"), py::arg("gain"), py::arg("ncut"));
    m.def(
        "bump_report",
        [](double g1) {
            auto r = metrics::bump_report(g1);
            return py::make_tuple(r.alpha_bump, r.pfp_peak, r.alpha0);
        },
        py::arg("g1"), "(alpha_bump, pfp_peak, alpha0)");

    // channels
    m.def(
        "design_stages",
        [](double mu2, double gain, int ncut, double nbar) {
            auto d = channels::design_stages({mu2, gain, ncut, nbar});
            return py::make_tuple(d.g1, d.g2, d.alpha_tilde, d.suboptimal);
        },
        py::arg("mu2"), py::arg("gain"), py::arg("ncut") = 1, py::arg("nbar") = 0.0,
        "(g1, g2, alpha_tilde, suboptimal)");
    m.def(
        "immaculate_apply",
        [](fock::Complex alpha, double g1, int ncut, int cutoff) {
            auto [state, p] = channels::immaculate_apply(alpha, g1, ncut, cutoff);
            return py::make_tuple(state.amplitudes, p);
        },
        py::arg("alpha"), py::arg("g1"), py::arg("ncut"), py::arg("cutoff"));
    m.def(
        "linear_amp_channel",
        [](const fock::Matrix& rho, double g, double nbar, int out_cutoff, double eps) {
            return channels::linear_amp_channel(fock::DensityOperator{rho}, g, nbar,
                                                out_cutoff, eps)
                .matrix;
        },
        py::arg("rho"), py::arg("g"), py::arg("nbar") = 0.0, py::arg("out_cutoff") = 0,
        py::arg("eps_trunc") = fock::kEpsTrunc);
    m.def(
        "mu2_amplify",
        [](fock::Complex alpha, double mu2, double gain, int ncut, double nbar) {
            auto r = channels::mu2_amplify(alpha, {mu2, gain, ncut, nbar});
            py::dict d;
            d["rho_out"] = r.rho_out.matrix;
            d["p_success"] = r.p_success;
            d["fidelity"] = r.fidelity;
            d["pfp"] = r.pfp;
            return d;
        },
        py::arg("alpha"), py::arg("mu2"), py::arg("gain"), py::arg("ncut") = 1,
        py::arg("nbar") = 0.0);

    // oracle
    m.def(
        "two_mode_amplify",
        [](const fock::Matrix& rho, double nbar, double g, int out_cutoff) {
            oracle::OracleCutoffs oc;
            oc.out = out_cutoff;
            oc.check_top_levels = false;
            return oracle::two_mode_amplify(fock::DensityOperator{rho}, nbar, g, oc).matrix;
        },
        py::arg("rho"), py::arg("nbar"), py::arg("g"), py::arg("out_cutoff") = 0,
        "Two-mode squeezer + partial trace ground truth");

    // quasiprob
    m.def(
        "q_function",
        [](const fock::Matrix& rho, fock::Complex beta) {
            return quasiprob::q_function(fock::DensityOperator{rho}, beta);
        },
        py::arg("rho"), py::arg("beta"));
    m.def(
        "q_grid",
        [](const fock::Matrix& rho, double scale, double re_min, double re_max,
           double im_min, double im_max, int n_re, int n_im) {
            quasiprob::GridSpec g{re_min, re_max, im_min, im_max, n_re, n_im};
            auto q = quasiprob::q_rescale(
                quasiprob::q_evaluator(fock::DensityOperator{rho}), scale);
            return quasiprob::evaluate_grid(q, g).values;
        },
        py::arg("rho"), py::arg("scale") = 1.0, py::arg("re_min") = -3.0,
        py::arg("re_max") = 3.0, py::arg("im_min") = -3.0, py::arg("im_max") = 3.0,
        py::arg("n_re") = 201, py::arg("n_im") = 201,
        "Q of the ideal-amplified state on a grid, via Q_out(b) = Q_in(b/scale)/scale^2");
    m.def(
        "snr_quadratures",
        [](const fock::Matrix& rho1, double g2, double p) {
            auto s = quasiprob::snr_quadratures_antinormal(fock::DensityOperator{rho1}, g2, p);
            return py::make_tuple(s.snr_x1, s.snr_x2, s.sqrtp_snr_x1, s.sqrtp_snr_x2);
        },
        py::arg("rho_first_stage"), py::arg("g2"), py::arg("p_success"));
    m.def(
        "snr_number",
        [](const fock::Matrix& rho1, double g2, double p) {
            auto s = quasiprob::snr_number(fock::DensityOperator{rho1}, g2, p);
            return py::make_tuple(s.snr_n, s.sqrtp_snr_n);
        },
        py::arg("rho_first_stage"), py::arg("g2"), py::arg("p_success"));
}
