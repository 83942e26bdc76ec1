// Command-line front end: reproduces the closed-form tables and the figure
// datasets as deterministic CSV/JSON files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mu2amp/channels.hpp"
#include "mu2amp/errors.hpp"
#include "mu2amp/fock.hpp"
#include "mu2amp/metrics.hpp"
#include "mu2amp/oracle.hpp"
#include "mu2amp/quasiprob.hpp"

namespace {

using mu2amp::CutoffInsufficient;
using mu2amp::InvalidSpec;
using namespace mu2amp;

using Cell = std::variant<double, std::string>;

struct Table {
    std::string provenance; // full flag set, recorded as a comment line
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t, int precision) {
    os << "# " << t.provenance << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (const double* d = std::get_if<double>(&row[i]))
                os << format_double(*d, precision);
            else
                os << std::get<std::string>(row[i]);
            os << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(std::ostream& os, const Table& t, int precision) {
    nlohmann::ordered_json j;
    j["provenance"] = t.provenance;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell))
                r.push_back(std::stod(format_double(*d, precision)));
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << "\n";
}

struct OutputOpts {
    std::string path;   // empty = stdout
    std::string format = "csv";
    int precision = 9;
};

void add_output_opts(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("-o,--output", o.path, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--precision", o.precision, "Significant digits for floats")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
}

void emit(const Table& t, const OutputOpts& o) {
    if (o.path.empty()) {
        if (o.format == "csv")
            write_csv(std::cout, t, o.precision);
        else
            write_json(std::cout, t, o.precision);
        return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + o.path);
    if (o.format == "csv")
        write_csv(f, t, o.precision);
    else
        write_json(f, t, o.precision);
}

std::string join_args(int argc, char** argv) {
    std::ostringstream ss;
    ss << "mu2amp";
    for (int i = 1; i < argc; ++i) ss << " " << argv[i];
    return ss.str();
}

// ---- design ---------------------------------------------------------------

int cmd_design(const std::string& prov, double mu2, double gain, double nbar,
               const OutputOpts& out) {
    Table t;
    t.provenance = prov;
    t.columns = {"mu2", "gain", "g1", "g2", "alpha_tilde_n1", "alpha_tilde_n2"};
    channels::AmplifierSpec spec{mu2, gain, 1, nbar};
    const channels::StageDesign d1 = channels::design_stages(spec);
    spec.ncut = 2;
    const channels::StageDesign d2 = channels::design_stages(spec);
    std::vector<Cell> row{mu2, gain, d1.g1, d1.g2};
    if (mu2 >= 1.0) { // works over the entire phase plane
        row.emplace_back(std::string("-"));
        row.emplace_back(std::string("-"));
    } else {
        row.emplace_back(d1.alpha_tilde);
        row.emplace_back(d2.alpha_tilde);
    }
    t.rows.push_back(std::move(row));
    emit(t, out);
    return 0;
}

// ---- table1 ---------------------------------------------------------------

int cmd_table1(const std::string& prov, double gain, int ncut, const OutputOpts& out) {
    const double G2 = gain * gain;
    auto g2sq = [&](double mu2) { return mu2 * (G2 - 1.0) + 1.0; };
    auto g1sq = [&](double mu2) { return G2 / g2sq(mu2); };
    const metrics::SOrder anti{-1.0}, sym{0.0};

    struct Row {
        const char* name;
        double v0, vh, vh_lim, v1;
        std::optional<double> v1_lim;
    };
    const std::vector<Row> rows = {
        {"g1_sq", g1sq(0.0), g1sq(0.5), 2.0, g1sq(1.0), std::nullopt},
        {"g2_sq", g2sq(0.0), g2sq(0.5), G2 / 2.0, g2sq(1.0), std::nullopt},
        {"fidelity", metrics::fidelity_mu(0.0, gain), metrics::fidelity_mu(0.5, gain),
         2.0 / G2, metrics::fidelity_mu(1.0, gain), std::nullopt},
        {"p_success", metrics::p_success_region(0.0, gain, ncut),
         metrics::p_success_region(0.5, gain, ncut), std::pow(0.5, ncut),
         metrics::p_success_region(1.0, gain, ncut), std::nullopt},
        {"pfp", metrics::pfp_region(0.0, gain, ncut), metrics::pfp_region(0.5, gain, ncut),
         std::pow(0.5, ncut - 1), metrics::pfp_region(1.0, gain, ncut), std::nullopt},
        {"nf_antinormal", metrics::noise_figure(anti, 0.0, gain, ncut),
         metrics::noise_figure(anti, 0.5, gain, ncut), std::pow(2.0, ncut - 1),
         metrics::noise_figure(anti, 1.0, gain, ncut), std::nullopt},
        {"nf_symmetric", metrics::noise_figure(sym, 0.0, gain, ncut),
         metrics::noise_figure(sym, 0.5, gain, ncut), std::pow(2.0, ncut),
         metrics::noise_figure(sym, 1.0, gain, ncut), 2.0},
    };

    Table t;
    t.provenance = prov;
    t.columns = {"quantity", "mu2_0", "mu2_half", "mu2_half_limit", "mu2_1", "mu2_1_limit"};
    for (const auto& r : rows) {
        std::vector<Cell> row{std::string(r.name), r.v0, r.vh, r.vh_lim, r.v1};
        if (r.v1_lim)
            row.emplace_back(*r.v1_lim);
        else
            row.emplace_back(std::string("-"));
        t.rows.push_back(std::move(row));
    }
    emit(t, out);
    return 0;
}

// ---- sweep ----------------------------------------------------------------

int cmd_sweep(const std::string& prov, const std::string& metric, double mu2, double gain,
              int ncut, double nbar, double alpha_max, int steps, const OutputOpts& out) {
    channels::AmplifierSpec spec{mu2, gain, ncut, nbar};
    const channels::StageDesign d = channels::design_stages(spec);

    Table t;
    t.provenance = prov;
    t.columns = {"alpha", metric, "alpha_tilde", "alpha_bump"};
    double alpha_bump = std::numeric_limits<double>::quiet_NaN();
    if (ncut == 1 && d.g1 > 1.0) alpha_bump = metrics::bump_report(d.g1).alpha_bump;

    channels::PipelineCutoffs pc;
    if (metric == "pfp") {
        // Numeric pipeline route; size the output cutoff to cover the
        // target coherent state at the largest amplitude.
        const double b2 = gain * alpha_max * gain * alpha_max;
        pc.out = std::max(channels::amplified_cutoff(ncut + 2, d.g2 * std::sqrt(nbar + 1.0)),
                          static_cast<int>(std::ceil(b2 + 12.0 * std::sqrt(b2) + 20.0)));
        pc.eps_trunc = 1.0; // tail handled by the sizing above
    }

    for (int i = 0; i <= steps; ++i) {
        const double a = alpha_max * double(i) / double(steps);
        double v = 0.0;
        if (metric == "pfp-exact")
            v = metrics::pfp_exact(a, d.g1, ncut);
        else if (metric == "fidelity")
            v = metrics::fidelity_exact(a, d.g1, gain, ncut);
        else if (metric == "psuccess")
            v = metrics::p_success_exact(a, d.g1, ncut);
        else if (metric == "pfp-bound")
            v = metrics::pfp_bound(a, d.g1);
        else
            v = channels::mu2_amplify(a, spec, pc).pfp;
        std::vector<Cell> row{a, v, d.alpha_tilde};
        if (std::isnan(alpha_bump))
            row.emplace_back(std::string("-"));
        else
            row.emplace_back(alpha_bump);
        t.rows.push_back(std::move(row));
    }
    emit(t, out);
    return 0;
}

// ---- contour --------------------------------------------------------------

int cmd_contour(const std::string& prov, int ncut, double mu2_min, double mu2_max,
                int mu2_steps, double gain2_min, double gain2_max, int gain2_steps,
                bool log_gain2, const OutputOpts& out) {
    Table t;
    t.provenance = prov;
    t.columns = {"mu2", "gain2", "pfp_region", "mu2_gain2", "regime"};
    for (int i = 0; i <= mu2_steps; ++i) {
        const double mu2 = mu2_min + (mu2_max - mu2_min) * double(i) / double(mu2_steps);
        for (int j = 0; j <= gain2_steps; ++j) {
            const double f = double(j) / double(gain2_steps);
            const double g2 = log_gain2
                                  ? gain2_min * std::pow(gain2_max / gain2_min, f)
                                  : gain2_min + (gain2_max - gain2_min) * f;
            const double gain = std::sqrt(g2);
            const double v = metrics::pfp_region(mu2, gain, ncut);
            const char* regime = "boundary";
            switch (metrics::regime_classify(mu2, gain)) {
                case metrics::Regime::ImmaculateDominant: regime = "immaculate-dominant"; break;
                case metrics::Regime::IdealDominant: regime = "ideal-dominant"; break;
                case metrics::Regime::Boundary: break;
            }
            t.rows.push_back({mu2, g2, v, mu2 * g2, std::string(regime)});
        }
    }
    emit(t, out);
    return 0;
}

// ---- qgrid ----------------------------------------------------------------

int cmd_qgrid(const std::string& prov, double mu2, double gain, int ncut, double alpha_re,
              double alpha_im, const quasiprob::GridSpec& grid, const OutputOpts& out) {
    channels::AmplifierSpec spec{mu2, gain, ncut, 0.0};
    const channels::StageDesign d = channels::design_stages(spec);
    const fock::Complex alpha{alpha_re, alpha_im};

    // Q of the pipeline output, via the exact Q-level transform of the
    // second (ideal) stage. The first-stage state needs only its grid/g2
    // support: Q is probed at |beta| <= grid diag / g2 plus the coherent tail.
    fock::DensityOperator rho1;
    if (d.g1 > 1.0) {
        rho1 = fock::density_from_vector(
            channels::immaculate_apply(alpha, d.g1, ncut, ncut + 2).first);
    } else {
        const double reach = std::max({std::abs(grid.re_min), std::abs(grid.re_max),
                                       std::abs(grid.im_min), std::abs(grid.im_max)});
        const double b2 = 2.0 * reach * reach / (d.g2 * d.g2);
        const int c = static_cast<int>(std::ceil(b2 + 12.0 * std::sqrt(b2))) + 20;
        rho1 = fock::density_from_vector(fock::coherent_state(alpha, c).state);
    }
    const quasiprob::QEvaluator q =
        quasiprob::q_rescale(quasiprob::q_evaluator(rho1), d.g2);
    const quasiprob::QGrid qg = quasiprob::evaluate_grid(q, grid);

    Table t;
    const fock::Complex target = gain * alpha;
    std::ostringstream prov2;
    prov2 << prov << " | target_re=" << format_double(target.real(), 9)
          << " target_im=" << format_double(target.imag(), 9);
    t.provenance = prov2.str();
    t.columns = {"re_beta", "im_beta", "q"};
    for (int i = 0; i < grid.n_re; ++i)
        for (int j = 0; j < grid.n_im; ++j) {
            const fock::Complex b = grid.point(i, j);
            t.rows.push_back({b.real(), b.imag(), qg.values(i, j)});
        }
    emit(t, out);
    return 0;
}

// ---- snr ------------------------------------------------------------------

int cmd_snr(const std::string& prov, const std::string& mode, double mu2, double gain,
            int ncut, double alpha_max, int steps, const OutputOpts& out) {
    channels::AmplifierSpec spec{mu2, gain, ncut, 0.0};
    const channels::StageDesign d = channels::design_stages(spec);

    Table t;
    t.provenance = prov;
    if (mode == "quadrature")
        t.columns = {"alpha", "snr_x1", "snr_x2", "sqrtp_snr_x1", "sqrtp_snr_x2", "snr_in"};
    else
        t.columns = {"alpha", "snr_n", "sqrtp_snr_n", "snr_in_number"};

    for (int i = 0; i <= steps; ++i) {
        const double a = alpha_max * double(i) / double(steps);
        fock::DensityOperator rho1;
        double p = 1.0;
        if (d.g1 > 1.0) {
            auto [state, ps] = channels::immaculate_apply(a, d.g1, ncut, ncut + 2);
            p = ps;
            rho1 = fock::density_from_vector(state);
        } else {
            const int c = static_cast<int>(std::ceil(a * a + 12.0 * a)) + 20;
            rho1 = fock::density_from_vector(fock::coherent_state(a, c).state);
        }
        if (mode == "quadrature") {
            const auto s = quasiprob::snr_quadratures_antinormal(rho1, d.g2, p);
            t.rows.push_back({a, s.snr_x1, s.snr_x2, s.sqrtp_snr_x1, s.sqrtp_snr_x2,
                              std::sqrt(2.0) * a});
        } else {
            const auto s = quasiprob::snr_number(rho1, d.g2, p);
            t.rows.push_back({a, s.snr_n, s.sqrtp_snr_n, a});
        }
    }
    emit(t, out);
    return 0;
}

// ---- verify ---------------------------------------------------------------

struct Check {
    std::string name;
    double margin; // tolerance - observed (>= 0 passes)
    bool pass;
};

int cmd_verify(double inject_channel_error) {
    std::vector<Check> checks;
    auto record = [&](const std::string& name, double observed, double tol) {
        checks.push_back({name, tol - observed, observed <= tol});
    };

    // Channel vs oracle on a small matrix.
    const fock::DensityOperator vac = fock::density_from_vector(fock::number_state(0, 6));
    const fock::DensityOperator coh =
        fock::density_from_vector(fock::coherent_state(0.3, 14).state);
    const fock::DensityOperator kt = fock::density_from_vector(
        channels::immaculate_apply(0.3, 2.0, 1, 6).first);
    struct Case {
        const fock::DensityOperator* rho;
        const char* label;
        double g, nbar;
    };
    const std::vector<Case> cases = {
        {&vac, "vacuum", 1.5, 0.0}, {&coh, "coherent", 1.5, 0.0},
        {&coh, "coherent", 1.5, 0.5}, {&kt, "kraus-n1", 2.0, 0.0},
    };
    for (const auto& c : cases) {
        const int window = 60;
        oracle::OracleCutoffs oc;
        oc.out = window;
        oc.check_top_levels = false;
        fock::DensityOperator via_oracle = oracle::two_mode_amplify(*c.rho, c.nbar, c.g, oc);
        fock::DensityOperator via_channel =
            channels::linear_amp_channel(*c.rho, c.g, c.nbar, window, 1.0);
        via_channel.matrix(0, 0) += inject_channel_error;
        std::ostringstream name;
        name << "channel-oracle " << c.label << " g=" << c.g << " nbar=" << c.nbar;
        record(name.str(), fock::trace_distance(via_channel, via_oracle), 1e-8);
    }

    // Variance law on the channel.
    for (double nbar : {0.0, 0.5}) {
        const double g = 2.0;
        fock::DensityOperator rho = channels::linear_amp_channel(coh, g, nbar, 150, 1e-10);
        rho.matrix(0, 0) += inject_channel_error;
        const double n = fock::normal_moment(rho, 1, 1).real();
        const fock::Complex a = fock::normal_moment(rho, 0, 1);
        const double noise = n - std::norm(a);
        const double expected = (nbar + 1.0) * (g * g - 1.0);
        std::ostringstream name;
        name << "variance-law nbar=" << nbar;
        record(name.str(), std::abs(noise - expected), 1e-7);
    }

    // Closed-form success probability vs the Kraus route.
    {
        double worst = 0.0;
        for (double a : {0.0, 0.11, 0.407, 1.0})
            for (double g1 : {1.4055638569974547, 2.0, 9.0})
                for (int n : {1, 2}) {
                    const double p = channels::immaculate_apply(a, g1, n, n + 2).second;
                    worst = std::max(worst, std::abs(p - metrics::p_success_exact(a, g1, n)));
                }
        record("p-success closed form vs Kraus", worst, 1e-14);
    }

    // Q rescaling vs oracle amplification.
    {
        const auto [state, p] = channels::immaculate_apply(0.407, 1.4055638569974547, 1, 3);
        const fock::DensityOperator rho1 = fock::density_from_vector(state);
        const double g2 = 6.4031242374328485;
        oracle::OracleCutoffs oc;
        oc.out = 260;
        oc.check_top_levels = false;
        const fock::DensityOperator amped = oracle::two_mode_amplify(rho1, 0.0, g2, oc);
        const auto q_direct = quasiprob::q_evaluator(amped, 1.0);
        const auto q_scaled = quasiprob::q_rescale(quasiprob::q_evaluator(rho1), g2);
        double worst = 0.0;
        for (double re = -3.0; re <= 3.01; re += 0.25)
            for (double im = -3.0; im <= 3.01; im += 0.25) {
                const fock::Complex b{re, im};
                worst = std::max(worst, std::abs(q_direct(b) - q_scaled(b)));
            }
        record("q-rescale vs oracle", worst, 1e-7);
    }

    // Stage design identity.
    {
        double worst = 0.0;
        for (double mu2 : {0.0, 0.25, 0.5, 1.0, 2.0})
            for (double gain : {1.0, 2.0, 9.0}) {
                channels::AmplifierSpec s{mu2, gain, 1, mu2 > 1.0 ? mu2 - 1.0 : 0.0};
                const auto d = channels::design_stages(s);
                worst = std::max(worst, std::abs(d.g1 * d.g2 - gain));
            }
        record("design g1*g2 = G", worst, 1e-12);
    }

    bool all = true;
    for (const auto& c : checks) {
        std::printf("%-45s %s  margin=%.3e\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.margin);
        all = all && c.pass;
    }
    return all ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mu2amp: reduced-noise probabilistic linear amplifier toolkit"};
    app.require_subcommand(1);

    const std::string prov = join_args(argc, argv);

    double mu2 = 0.5, gain = 9.0, nbar = 0.0;
    int ncut = 1;

    OutputOpts out_design, out_table1, out_sweep, out_contour, out_qgrid, out_snr;

    auto* design = app.add_subcommand("design", "Stage design parameters (g1, g2, operating region)");
    design->add_option("--mu2", mu2, "Noise parameter mu^2")->required();
    design->add_option("--gain", gain, "Overall amplitude gain G")->required();
    design->add_option("--nbar", nbar, "Second-stage thermal quanta")->capture_default_str();
    add_output_opts(design, out_design);

    double t1_gain = 9.0;
    int t1_ncut = 2;
    auto* table1 = app.add_subcommand("table1", "Operating-region properties of the three special amplifiers");
    table1->add_option("--gain", t1_gain, "Overall amplitude gain G")->capture_default_str();
    table1->add_option("--ncut", t1_ncut, "Number cutoff N")->capture_default_str();
    add_output_opts(table1, out_table1);

    std::string sweep_metric = "pfp-exact";
    double sweep_mu2 = 0.5, sweep_gain = 9.0, sweep_nbar = 0.0, sweep_amax = 2.0;
    int sweep_ncut = 1, sweep_steps = 200;
    auto* sweep = app.add_subcommand("sweep", "Metric as a function of input amplitude");
    sweep->add_option("--metric", sweep_metric, "Quantity to sweep")
        ->check(CLI::IsMember({"pfp", "pfp-exact", "fidelity", "psuccess", "pfp-bound"}))
        ->capture_default_str();
    sweep->add_option("--mu2", sweep_mu2)->required();
    sweep->add_option("--gain", sweep_gain)->required();
    sweep->add_option("--ncut", sweep_ncut)->capture_default_str();
    sweep->add_option("--nbar", sweep_nbar)->capture_default_str();
    sweep->add_option("--alpha-max", sweep_amax)->capture_default_str();
    sweep->add_option("--steps", sweep_steps)->check(CLI::PositiveNumber)->capture_default_str();
    add_output_opts(sweep, out_sweep);

    int ct_ncut = 2, ct_mu2_steps = 50, ct_g2_steps = 50;
    double ct_mu2_min = 0.0, ct_mu2_max = 1.0, ct_g2_min = 1.0, ct_g2_max = 100.0;
    bool ct_log = false;
    auto* contour = app.add_subcommand("contour", "Operating-region PFP over the (mu^2, G^2) plane");
    contour->add_option("--ncut", ct_ncut)->capture_default_str();
    contour->add_option("--mu2-min", ct_mu2_min)->capture_default_str();
    contour->add_option("--mu2-max", ct_mu2_max)->capture_default_str();
    contour->add_option("--mu2-steps", ct_mu2_steps)->check(CLI::PositiveNumber)->capture_default_str();
    contour->add_option("--gain2-min", ct_g2_min)->capture_default_str();
    contour->add_option("--gain2-max", ct_g2_max)->capture_default_str();
    contour->add_option("--gain2-steps", ct_g2_steps)->check(CLI::PositiveNumber)->capture_default_str();
    contour->add_flag("--log-gain2", ct_log, "Log-spaced G^2 samples");
    add_output_opts(contour, out_contour);

    double qg_mu2 = 0.0, qg_gain = 9.0, qg_alpha_re = 0.11, qg_alpha_im = 0.0;
    int qg_ncut = 1;
    quasiprob::GridSpec grid;
    auto* qgrid = app.add_subcommand("qgrid", "Husimi Q of the pipeline output on a phase-space grid");
    qgrid->add_option("--mu2", qg_mu2)->required();
    qgrid->add_option("--gain", qg_gain)->required();
    qgrid->add_option("--ncut", qg_ncut)->capture_default_str();
    qgrid->add_option("--alpha", qg_alpha_re, "Input amplitude (real part)")->required();
    qgrid->add_option("--alpha-im", qg_alpha_im)->capture_default_str();
    qgrid->add_option("--re-min", grid.re_min)->capture_default_str();
    qgrid->add_option("--re-max", grid.re_max)->capture_default_str();
    qgrid->add_option("--im-min", grid.im_min)->capture_default_str();
    qgrid->add_option("--im-max", grid.im_max)->capture_default_str();
    qgrid->add_option("--n-re", grid.n_re)->capture_default_str();
    qgrid->add_option("--n-im", grid.n_im)->capture_default_str();
    add_output_opts(qgrid, out_qgrid);

    std::string snr_mode = "quadrature";
    double snr_mu2 = 0.5, snr_gain = 9.0, snr_amax = 2.0;
    int snr_ncut = 1, snr_steps = 200;
    auto* snr = app.add_subcommand("snr", "Antinormal SNRs and root-probability products");
    snr->add_option("--mode", snr_mode)->check(CLI::IsMember({"quadrature", "number"}))
        ->capture_default_str();
    snr->add_option("--mu2", snr_mu2)->required();
    snr->add_option("--gain", snr_gain)->required();
    snr->add_option("--ncut", snr_ncut)->capture_default_str();
    snr->add_option("--alpha-max", snr_amax)->capture_default_str();
    snr->add_option("--steps", snr_steps)->check(CLI::PositiveNumber)->capture_default_str();
    add_output_opts(snr, out_snr);

    double inject = 0.0;
    auto* verify = app.add_subcommand("verify", "Run the oracle-equivalence and invariant checks");
    verify->add_option("--inject-channel-error", inject,
                       "Perturb the channel output (sensitivity testing aid)")
        ->capture_default_str();

    // One config option for all subcommands; keys live in a [subcommand]
    // section (or use dotted subcommand.key names). Unknown keys are errors.
    app.set_config("--config", "",
                   "config file; keys in a [subcommand] section (flags override it)");
    app.allow_config_extras(false);
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (design->parsed()) return cmd_design(prov, mu2, gain, nbar, out_design);
        if (table1->parsed()) return cmd_table1(prov, t1_gain, t1_ncut, out_table1);
        if (sweep->parsed())
            return cmd_sweep(prov, sweep_metric, sweep_mu2, sweep_gain, sweep_ncut,
                             sweep_nbar, sweep_amax, sweep_steps, out_sweep);
        if (contour->parsed())
            return cmd_contour(prov, ct_ncut, ct_mu2_min, ct_mu2_max, ct_mu2_steps,
                               ct_g2_min, ct_g2_max, ct_g2_steps, ct_log, out_contour);
        if (qgrid->parsed()) {
            const fock::Complex a{qg_alpha_re, qg_alpha_im};
            return cmd_qgrid(prov, qg_mu2, qg_gain, qg_ncut, a.real(), a.imag(), grid,
                             out_qgrid);
        }
        if (snr->parsed())
            return cmd_snr(prov, snr_mode, snr_mu2, snr_gain, snr_ncut, snr_amax,
                           snr_steps, out_snr);
        if (verify->parsed()) return cmd_verify(inject);
    } catch (const CutoffInsufficient& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSpec& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const SingularOrdering& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
