// rml: command-line front end for the Riemann multifractal laboratory.
//
// Every subcommand wraps one library operation, writes machine-readable CSV
// (plus an optional JSON mirror), echoes its flags in '#' header lines, and
// drops a .manifest.json next to the output recording flags, seed, version,
// wall time and output digests. Exit codes: 0 success, 2 validation error,
// 3 numerical failure.

#include <chrono>
#include <cinttypes>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rml/binormal.hpp"
#include "rml/diophantine.hpp"
#include "rml/exp_sums.hpp"
#include "rml/fft.hpp"
#include "rml/holder.hpp"
#include "rml/parallel.hpp"
#include "rml/turbulence.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// fraction "P/Q" or plain decimal
double parse_x0(const std::string& s, std::int64_t* P = nullptr, std::int64_t* Q = nullptr) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (P) *P = 0;
        if (Q) *Q = 0; // unknown rational form
        return std::stod(s);
    }
    const std::int64_t p = std::stoll(s.substr(0, slash));
    const std::int64_t q = std::stoll(s.substr(slash + 1));
    if (q < 1) throw CLI::ValidationError("--x0", "denominator must be >= 1");
    if (P) *P = p;
    if (Q) *Q = q;
    return static_cast<double>(p) / static_cast<double>(q);
}

std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("RML_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    return p;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// one CSV table + flag echo + manifest + optional JSON mirror
class RunOutput {
  public:
    RunOutput(std::string command, std::map<std::string, std::string> flags)
        : command_(std::move(command)), flags_(std::move(flags)),
          start_(std::chrono::steady_clock::now()) {}

    void columns(std::vector<std::string> names) { columns_ = std::move(names); }
    void row(const std::vector<double>& values) { rows_.push_back(values); }
    void summary(const std::string& key, const std::string& value) {
        summary_.emplace_back(key, value);
    }
    void summary(const std::string& key, double value) { summary(key, fmt(value)); }

    std::string csv() const {
        std::ostringstream os;
        os << "# rml " << command_ << "\n";
        for (const auto& [k, v] : flags_) os << "# " << k << ": " << v << "\n";
        for (const auto& [k, v] : summary_) os << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << fmt(r[i]) << (i + 1 < r.size() ? "," : "\n");
        }
        return os.str();
    }

    nlohmann::json json() const {
        nlohmann::json j;
        j["command"] = command_;
        j["flags"] = flags_;
        nlohmann::json s = nlohmann::json::object();
        for (const auto& [k, v] : summary_) s[k] = v;
        j["summary"] = s;
        j["columns"] = columns_;
        j["rows"] = rows_;
        return j;
    }

    // writes the files and returns the one-line terminal summary
    std::string finalize(const std::string& out_path, const std::string& json_path,
                         std::uint64_t seed) {
        std::vector<std::pair<std::string, std::string>> outputs;
        auto write_file = [&](const std::string& raw, const std::string& bytes,
                              const char* flag) {
            const auto p = resolve_out(raw);
            std::ofstream f(p, std::ios::binary);
            if (!f || !(f << bytes))
                throw CLI::ValidationError(flag, "cannot write " + p.string());
            char dig[32];
            std::snprintf(dig, sizeof dig, "%016" PRIx64, fnv1a64(bytes));
            outputs.emplace_back(p.string(), dig);
        };
        if (!out_path.empty()) write_file(out_path, csv(), "--out");
        if (!json_path.empty()) write_file(json_path, json().dump(1), "--json");
        if (!out_path.empty()) {
            const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - start_)
                                  .count();
            nlohmann::json m;
            m["command"] = command_;
            m["flags"] = flags_;
            m["seed"] = seed;
            m["version"] = kVersion;
            m["wall_ms"] = wall;
            m["outputs"] = nlohmann::json::array();
            for (const auto& [path, dig] : outputs)
                m["outputs"].push_back({{"path", path}, {"fnv1a64", dig}});
            const auto mp = resolve_out(out_path).string() + ".manifest.json";
            std::ofstream f(mp, std::ios::binary);
            if (!f || !(f << m.dump(1)))
                throw CLI::ValidationError("--out", "cannot write " + mp);
        }
        std::ostringstream line;
        line << "rml " << command_ << ":";
        for (const auto& [k, v] : summary_) line << " " << k << "=" << v;
        if (!out_path.empty()) line << " -> " << resolve_out(out_path).string();
        return line.str();
    }

  private:
    std::string command_;
    std::map<std::string, std::string> flags_;
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> summary_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for generalized Riemann non-differentiable functions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    unsigned threads = 0;
    std::uint64_t seed = 12345;
    app.add_option("--threads", threads, "worker thread cap (0 = hardware)");
    app.add_option("--seed", seed, "seed for sampled diagnostics");

    std::string out_path, json_path;
    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "CSV output path");
        sub->add_option("--json", json_path, "JSON mirror path");
    };

    auto* eval = app.add_subcommand("eval", "evaluate R, Rt, or W at one point; CSV columns: re, im");
    std::string e_kind = "R", e_x0 = "0";
    double e_t = 0.0, e_eps = 0.0;
    int e_N = 10000;
    eval->add_option("--kind", e_kind, "R | Rt | W")->check(CLI::IsMember({"R", "Rt", "W"}));
    eval->add_option("--x0", e_x0, "phase shift (decimal or P/Q)");
    eval->add_option("--t", e_t, "evaluation point");
    eval->add_option("--N", e_N, "truncation")->check(CLI::PositiveNumber);
    eval->add_option("--eps", e_eps, "tolerance (overrides --N)");
    add_io(eval);

    auto* trace = app.add_subcommand("trace", "curve trace of Rt over [t0, t1]; CSV columns: t, re, im");
    std::string tr_x0 = "0";
    double tr_t0 = 0.0, tr_t1 = 2.0 * std::numbers::pi;
    int tr_samples = 1024, tr_N = 10000;
    trace->add_option("--x0", tr_x0);
    trace->add_option("--t0", tr_t0);
    trace->add_option("--t1", tr_t1);
    trace->add_option("--samples", tr_samples)->check(CLI::Range(2, 100000000));
    trace->add_option("--N", tr_N)->check(CLI::PositiveNumber);
    add_io(trace);

    auto* gauss = app.add_subcommand("gauss", "quadratic Gauss sum; CSV columns: p, b, q, re, im, modulus, zero_class");
    std::int64_t g_p = 1, g_b = 0, g_q = 1;
    gauss->add_option("--p", g_p)->required();
    gauss->add_option("--b", g_b)->required();
    gauss->add_option("--q", g_q)->required()->check(CLI::PositiveNumber);
    add_io(gauss);

    auto* cf_cmd = app.add_subcommand("cf", "continued fraction expansion; CSV columns: n, a, p, q, residual, mu");
    double cf_t = 0.0;
    int cf_depth = 40;
    cf_cmd->add_option("--t", cf_t)->required();
    cf_cmd->add_option("--depth", cf_depth)->check(CLI::PositiveNumber);
    add_io(cf_cmd);

    auto* dsum = app.add_subcommand("dioph-sum", "partial sums of psi(q) phi(q); CSV columns: X, partial_sum");
    int ds_Q = 1;
    double ds_power = 2.0;
    std::int64_t ds_qmax = 10000;
    dsum->add_option("--Q", ds_Q, "filter q in 4QN (0 = unfiltered)");
    dsum->add_option("--power", ds_power, "psi = q^-power");
    dsum->add_option("--qmax", ds_qmax)->check(CLI::PositiveNumber);
    add_io(dsum);

    auto* dmeas = app.add_subcommand("dioph-measure",
                                     "exact measure of the finite-stage limsup union; CSV columns: lo, hi");
    int dm_Q = 1;
    double dm_power = 2.0;
    std::int64_t dm_qmin = 1, dm_qmax = 1000, dm_mc = 0;
    dmeas->add_option("--Q", dm_Q, "filter q in 4QN (0 = unfiltered)");
    dmeas->add_option("--power", dm_power, "psi = q^-power");
    dmeas->add_option("--qmin", dm_qmin)->check(CLI::PositiveNumber);
    dmeas->add_option("--qmax", dm_qmax)->check(CLI::PositiveNumber);
    dmeas->add_option("--mc", dm_mc, "Monte-Carlo cross-check points (0 = off)");
    add_io(dmeas);

    auto* ddim = app.add_subcommand("dioph-dim", "box-counting dimension of the Jarnik set; CSV columns: j, count");
    int dd_Q = 0, dd_jmin = 10, dd_jmax = 20;
    double dd_mu = 2.5;
    ddim->add_option("--mu", dd_mu)->required();
    ddim->add_option("--Q", dd_Q, "filter q in 4QN (0 = unfiltered)");
    ddim->add_option("--jmin", dd_jmin);
    ddim->add_option("--jmax", dd_jmax);
    add_io(ddim);

    auto* scal = app.add_subcommand("scaling", "variation scaling fit at a rational point; CSV columns: h, increment");
    std::string sc_x0 = "0/1";
    std::int64_t sc_p = 1, sc_q = 4;
    int sc_jmin = 12, sc_jmax = 30, sc_N = 1 << 18;
    scal->add_option("--x0", sc_x0, "rational P/Q");
    scal->add_option("--p", sc_p)->required();
    scal->add_option("--q", sc_q)->required()->check(CLI::PositiveNumber);
    scal->add_option("--jmin", sc_jmin);
    scal->add_option("--jmax", sc_jmax);
    scal->add_option("--N", sc_N)->check(CLI::PositiveNumber);
    add_io(scal);

    auto* hold = app.add_subcommand("holder", "pointwise Holder exponent fit; CSV columns: h, oscillation");
    std::string h_kind = "R", h_x0 = "0";
    double h_t = 0.0;
    int h_jmin = 4, h_jmax = 16, h_N = 1 << 16, h_samples = 8;
    hold->add_option("--kind", h_kind, "R | W")->check(CLI::IsMember({"R", "W"}));
    hold->add_option("--x0", h_x0);
    hold->add_option("--t", h_t)->required();
    hold->add_option("--jmin", h_jmin);
    hold->add_option("--jmax", h_jmax);
    hold->add_option("--N", h_N)->check(CLI::PositiveNumber);
    hold->add_option("--samples", h_samples);
    add_io(hold);

    auto* pred = app.add_subcommand("predict", "predicted exponent from Diophantine data; CSV columns: value, mu_hat");
    std::string pr_x0 = "0/1";
    double pr_t = 0.0;
    int pr_depth = 40;
    pred->add_option("--x0", pr_x0, "rational P/Q");
    pred->add_option("--t", pr_t)->required();
    pred->add_option("--depth", pr_depth);
    add_io(pred);

    auto* spec = app.add_subcommand("spectrum", "coarse-grained spectrum; CSV columns: alpha_bin, d_hat, count");
    std::string sp_kind = "R", sp_x0 = "0";
    std::int64_t sp_grid = 1 << 18;
    int sp_j = 18, sp_N = 1 << 18;
    spec->add_option("--kind", sp_kind, "R | W")->check(CLI::IsMember({"R", "W"}));
    spec->add_option("--x0", sp_x0);
    spec->add_option("--grid", sp_grid, "sample grid (power of two)");
    spec->add_option("--j", sp_j, "box scale 2^-j");
    spec->add_option("--N", sp_N)->check(CLI::PositiveNumber);
    add_io(spec);

    auto* flat = app.add_subcommand("flatness", "high-pass flatness curve; CSV columns: N_cut, F, F_quadrature, F_convolution, method_gap, tail_bound");
    std::string fl_x0 = "0";
    int fl_kmin = 2, fl_kmax = 8;
    flat->add_option("--x0", fl_x0);
    flat->add_option("--kmin", fl_kmin);
    flat->add_option("--kmax", fl_kmax);
    add_io(flat);

    auto* sf_cmd = app.add_subcommand("sf", "structure-function exponents; CSV columns: p, zeta, residual");
    std::string sf_x0 = "0";
    std::vector<double> sf_p;
    int sf_jmin = 6, sf_jmax = 16, sf_grid = 20, sf_N = 1 << 18;
    sf_cmd->add_option("--x0", sf_x0);
    sf_cmd->add_option("--p", sf_p, "orders (default 0.5..6 step 0.5)");
    sf_cmd->add_option("--jmin", sf_jmin);
    sf_cmd->add_option("--jmax", sf_jmax);
    sf_cmd->add_option("--grid", sf_grid, "log2 of the sample grid");
    sf_cmd->add_option("--N", sf_N)->check(CLI::PositiveNumber);
    add_io(sf_cmd);

    auto* fp = app.add_subcommand("fp-check", "Frisch-Parisi consistency; CSV columns: alpha, legendre, d_hat, at_boundary");
    std::string fp_x0 = "0";
    std::int64_t fp_grid = 1 << 18;
    int fp_j = 18, fp_N = 1 << 18, fp_jmin = 6, fp_jmax = 16, fp_sfgrid = 20;
    fp->add_option("--x0", fp_x0);
    fp->add_option("--grid", fp_grid);
    fp->add_option("--j", fp_j);
    fp->add_option("--N", fp_N);
    fp->add_option("--sf-jmin", fp_jmin);
    fp->add_option("--sf-jmax", fp_jmax);
    fp->add_option("--sf-grid", fp_sfgrid);
    add_io(fp);

    auto* bf = app.add_subcommand("bf-traj", "corner trajectory vs leading term; CSV columns: t, re, im[, lead_re, lead_im]");
    double bf_x0 = 0.0, bf_t1 = 2.0 * std::numbers::pi;
    int bf_M = 16, bf_steps = 4096;
    bool bf_corner = false;
    bf->add_option("--x0", bf_x0);
    bf->add_option("--M", bf_M)->check(CLI::NonNegativeNumber);
    bf->add_option("--t1", bf_t1);
    bf->add_option("--steps", bf_steps)->check(CLI::Range(2, 100000000));
    bf->add_flag("--corner", bf_corner, "also integrate the frame-driven trajectory");
    add_io(bf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 2;
    }

    rml::set_max_threads(threads);

    try {
        using namespace rml;
        std::string line;

        if (*eval) {
            const double x0 = parse_x0(e_x0);
            int N = e_N;
            if (e_eps > 0.0) N = SeriesParams::required_terms(e_eps);
            RunOutput run("eval", {{"kind", e_kind}, {"x0", e_x0}, {"t", fmt(e_t)},
                                   {"N", std::to_string(N)}, {"eps", fmt(e_eps)}});
            std::complex<double> v;
            if (e_kind == "R") v = eval_R(x0, e_t, N);
            else if (e_kind == "Rt") v = eval_R_tilde(x0, e_t, N);
            else v = {eval_weierstrass(e_t, N), 0.0};
            run.columns({"re", "im"});
            run.row({v.real(), v.imag()});
            run.summary("re", v.real());
            run.summary("im", v.imag());
            line = run.finalize(out_path, json_path, seed);
        } else if (*trace) {
            RunOutput run("trace", {{"x0", tr_x0}, {"t0", fmt(tr_t0)}, {"t1", fmt(tr_t1)},
                                    {"samples", std::to_string(tr_samples)},
                                    {"N", std::to_string(tr_N)}});
            const auto tc = curve_trace(parse_x0(tr_x0), tr_t0, tr_t1, tr_samples, tr_N);
            run.columns({"t", "re", "im"});
            for (std::size_t i = 0; i < tc.t_grid.size(); ++i)
                run.row({tc.t_grid[i], tc.points[i].real(), tc.points[i].imag()});
            run.summary("points", static_cast<double>(tc.points.size()));
            line = run.finalize(out_path, json_path, seed);
        } else if (*gauss) {
            RunOutput run("gauss", {{"p", std::to_string(g_p)}, {"b", std::to_string(g_b)},
                                    {"q", std::to_string(g_q)}});
            const auto g = gauss_sum(g_p, g_b, g_q);
            run.columns({"p", "b", "q", "re", "im", "modulus", "zero_class"});
            run.row({double(g.p), double(g.b), double(g.q), g.value.real(), g.value.imag(),
                     g.modulus, g.zero_class ? 1.0 : 0.0});
            run.summary("modulus", g.modulus);
            run.summary("zero_class", g.zero_class ? "true" : "false");
            line = run.finalize(out_path, json_path, seed);
        } else if (*cf_cmd) {
            RunOutput run("cf", {{"t", fmt(cf_t)}, {"depth", std::to_string(cf_depth)}});
            const auto cf = continued_fraction(cf_t, cf_depth);
            run.columns({"n", "a", "p", "q", "residual", "mu"});
            for (std::size_t n = 0; n < cf.convergents.size(); ++n)
                run.row({double(n), double(cf.coefficients[n]), double(cf.convergents[n].p),
                         double(cf.convergents[n].q), cf.convergents[n].residual,
                         cf.convergents[n].mu});
            run.summary("rational", cf.rational_termination ? "true" : "false");
            run.summary("effective_depth", double(cf.effective_depth));
            const auto est = irrationality_exponent_estimate(cf);
            run.summary("mu_hat", est.defined ? fmt(est.mu_hat) : "undefined (rational)");
            line = run.finalize(out_path, json_path, seed);
        } else if (*dsum) {
            RunOutput run("dioph-sum", {{"Q", std::to_string(ds_Q)}, {"power", fmt(ds_power)},
                                        {"qmax", std::to_string(ds_qmax)}});
            LimsupSetSpec s = LimsupSetSpec::power_law(ds_power);
            if (ds_Q > 0) {
                const std::int64_t m = 4 * ds_Q;
                s.q_filter = [m](std::int64_t q) { return q % m == 0; };
            }
            const auto ps = duffin_schaeffer_partial_sums(s, ds_qmax);
            run.columns({"X", "partial_sum"});
            for (std::size_t i = 0; i < ps.checkpoints.size(); ++i)
                run.row({double(ps.checkpoints[i]), ps.sums[i]});
            run.summary("diagnostic",
                        ps.diagnostic == SeriesDiagnostic::Convergent      ? "convergent"
                        : ps.diagnostic == SeriesDiagnostic::DivergentLogFit ? "divergent (log fit)"
                                                                             : "indeterminate");
            run.summary("log_slope", ps.log_slope);
            line = run.finalize(out_path, json_path, seed);
        } else if (*dmeas) {
            RunOutput run("dioph-measure",
                          {{"Q", std::to_string(dm_Q)}, {"power", fmt(dm_power)},
                           {"qmin", std::to_string(dm_qmin)}, {"qmax", std::to_string(dm_qmax)},
                           {"mc", std::to_string(dm_mc)}});
            LimsupSetSpec s = LimsupSetSpec::power_law(dm_power);
            if (dm_Q > 0) {
                const std::int64_t m = 4 * dm_Q;
                s.q_filter = [m](std::int64_t q) { return q % m == 0; };
            }
            const auto u = limsup_union(s, dm_qmin, dm_qmax);
            run.columns({"lo", "hi"});
            for (const auto& [lo, hi] : u.intervals) run.row({lo, hi});
            run.summary("measure", u.total_length);
            run.summary("intervals", double(u.intervals.size()));
            if (dm_mc > 0) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> uni(0.0, 1.0);
                std::int64_t hits = 0;
                for (std::int64_t i = 0; i < dm_mc; ++i)
                    if (u.contains(uni(rng))) ++hits;
                const double m_hat = double(hits) / double(dm_mc);
                run.summary("mc_estimate", m_hat);
                run.summary("mc_sigma",
                            std::sqrt(std::max(m_hat * (1 - m_hat), 1e-12) / double(dm_mc)));
            }
            line = run.finalize(out_path, json_path, seed);
        } else if (*ddim) {
            RunOutput run("dioph-dim", {{"mu", fmt(dd_mu)}, {"Q", std::to_string(dd_Q)},
                                        {"jmin", std::to_string(dd_jmin)},
                                        {"jmax", std::to_string(dd_jmax)}});
            const auto fit = jarnik_box_dimension(dd_Q, dd_mu, dd_jmin, dd_jmax);
            run.columns({"j", "count"});
            for (std::size_t i = 0; i < fit.counts.size(); ++i)
                run.row({double(fit.j_values[i]), double(fit.counts[i])});
            run.summary("slope", fit.slope);
            run.summary("reference", 2.0 / dd_mu);
            line = run.finalize(out_path, json_path, seed);
        } else if (*scal) {
            RunOutput run("scaling", {{"x0", sc_x0}, {"p", std::to_string(sc_p)},
                                      {"q", std::to_string(sc_q)},
                                      {"jmin", std::to_string(sc_jmin)},
                                      {"jmax", std::to_string(sc_jmax)},
                                      {"N", std::to_string(sc_N)}});
            std::int64_t P = 0, Q = 1;
            parse_x0(sc_x0, &P, &Q);
            if (Q == 0) throw CLI::ValidationError("--x0", "scaling needs a rational P/Q");
            const auto fit = rational_scaling_fit(P, Q, sc_p, sc_q, sc_jmin, sc_jmax, sc_N);
            run.columns({"h", "increment"});
            for (const auto& [h, d] : fit.table) run.row({h, d});
            run.summary("exponent", fit.exponent);
            run.summary("prefactor", fit.prefactor);
            run.summary("classified", fit.classified ? "q in 4QN (theory 1/2)" : "unclassified");
            run.summary("dist_x0", fit.dist_x0);
            run.summary("gauss_modulus", fit.gauss_modulus);
            run.summary("residual", fit.residual);
            if (fit.residual > 0.5) throw NumericalFailure("scaling fit residual > 0.5");
            line = run.finalize(out_path, json_path, seed);
        } else if (*hold) {
            RunOutput run("holder", {{"kind", h_kind}, {"x0", h_x0}, {"t", fmt(h_t)},
                                     {"jmin", std::to_string(h_jmin)},
                                     {"jmax", std::to_string(h_jmax)},
                                     {"N", std::to_string(h_N)}});
            const auto est = h_kind == "W"
                                 ? weierstrass_holder_estimate(h_t, h_jmin, h_jmax, h_N,
                                                               std::max(h_samples, 48), 6)
                                 : holder_exponent_estimate(parse_x0(h_x0), h_t, h_jmin, h_jmax,
                                                            h_N, h_samples);
            run.columns({"h", "oscillation"});
            for (const auto& [h, o] : est.oscillation_table) run.row({h, o});
            run.summary("alpha_fit", est.alpha_fit);
            run.summary("residual", est.residual);
            if (est.degenerate) throw NumericalFailure("degenerate oscillation regression");
            line = run.finalize(out_path, json_path, seed);
        } else if (*pred) {
            RunOutput run("predict", {{"x0", pr_x0}, {"t", fmt(pr_t)},
                                      {"depth", std::to_string(pr_depth)}});
            std::int64_t P = 0, Q = 1;
            parse_x0(pr_x0, &P, &Q);
            if (Q == 0) throw CLI::ValidationError("--x0", "predict needs a rational P/Q");
            const auto p = predicted_exponent(P, Q, pr_t, pr_depth);
            run.columns({"value", "mu_hat"});
            run.row({p.value, p.mu_hat});
            run.summary("kind", p.note);
            run.summary("value", p.value);
            line = run.finalize(out_path, json_path, seed);
        } else if (*spec) {
            RunOutput run("spectrum", {{"kind", sp_kind}, {"x0", sp_x0},
                                       {"grid", std::to_string(sp_grid)},
                                       {"j", std::to_string(sp_j)},
                                       {"N", std::to_string(sp_N)}});
            if (!is_pow2(std::size_t(sp_grid)))
                throw CLI::ValidationError("--grid", "must be a power of two");
            int grid_log2 = 0;
            while ((std::int64_t{1} << grid_log2) < sp_grid) ++grid_log2;
            const AlphaBins bins;
            const auto table =
                sp_kind == "W" ? weierstrass_spectrum(grid_log2, sp_j, bins, sp_N)
                               : spectrum_estimate(parse_x0(sp_x0), grid_log2, sp_j, bins, sp_N);
            run.columns({"alpha_bin", "d_hat", "count"});
            for (int i = 0; i < bins.count(); ++i)
                run.row({bins.center(i), table.d_estimates[std::size_t(i)],
                         double(table.counts[std::size_t(i)])});
            run.summary("boxes", double(table.boxes));
            line = run.finalize(out_path, json_path, seed);
        } else if (*flat) {
            RunOutput run("flatness", {{"x0", fl_x0}, {"kmin", std::to_string(fl_kmin)},
                                       {"kmax", std::to_string(fl_kmax)}});
            const auto curve = flatness_curve(parse_x0(fl_x0), fl_kmin, fl_kmax);
            run.columns({"N_cut", "F", "F_quadrature", "F_convolution", "method_gap",
                         "tail_bound"});
            for (const auto& pt : curve.points)
                run.row({double(pt.n_cut), pt.value, pt.value_quadrature, pt.value_convolution,
                         pt.method_gap, pt.tail_bound});
            run.summary("log_growth_slope", curve.log_growth_slope);
            line = run.finalize(out_path, json_path, seed);
        } else if (*sf_cmd) {
            RunOutput run("sf", {{"x0", sf_x0}, {"jmin", std::to_string(sf_jmin)},
                                 {"jmax", std::to_string(sf_jmax)},
                                 {"grid", std::to_string(sf_grid)},
                                 {"N", std::to_string(sf_N)}});
            std::vector<double> ps = sf_p;
            if (ps.empty())
                for (double p = 0.5; p <= 6.0 + 1e-9; p += 0.5) ps.push_back(p);
            const auto table = structure_function_exponents(parse_x0(sf_x0), ps, sf_jmin,
                                                            sf_jmax, sf_grid, sf_N);
            run.columns({"p", "zeta", "residual"});
            for (std::size_t i = 0; i < ps.size(); ++i)
                run.row({ps[i], table.zeta[i], table.residuals[i]});
            line = run.finalize(out_path, json_path, seed);
        } else if (*fp) {
            RunOutput run("fp-check", {{"x0", fp_x0}, {"grid", std::to_string(fp_grid)},
                                       {"j", std::to_string(fp_j)},
                                       {"N", std::to_string(fp_N)}});
            if (!is_pow2(std::size_t(fp_grid)))
                throw CLI::ValidationError("--grid", "must be a power of two");
            int grid_log2 = 0;
            while ((std::int64_t{1} << grid_log2) < fp_grid) ++grid_log2;
            const AlphaBins bins;
            const double x0 = parse_x0(fp_x0);
            const auto spec_table = spectrum_estimate(x0, grid_log2, fp_j, bins, fp_N);
            std::vector<double> ps;
            for (double p = 0.5; p <= 6.0 + 1e-9; p += 0.5) ps.push_back(p);
            const auto sft =
                structure_function_exponents(x0, ps, fp_jmin, fp_jmax, fp_sfgrid, fp_N);
            const auto rep = frisch_parisi_check(spec_table, sft, 0.55, 0.70);
            run.columns({"alpha", "legendre", "d_hat", "at_boundary"});
            for (std::size_t i = 0; i < rep.alpha.size(); ++i)
                run.row({rep.alpha[i], rep.legendre[i], rep.d_hat[i],
                         rep.at_boundary[i] ? 1.0 : 0.0});
            run.summary("max_dev_measured", rep.max_dev_measured);
            run.summary("max_dev_theory", rep.max_dev_theory);
            line = run.finalize(out_path, json_path, seed);
        } else if (*bf) {
            RunOutput run("bf-traj", {{"x0", fmt(bf_x0)}, {"M", std::to_string(bf_M)},
                                      {"t1", fmt(bf_t1)}, {"steps", std::to_string(bf_steps)},
                                      {"corner", bf_corner ? "true" : "false"}});
            std::vector<double> grid(std::size_t(bf_steps) + 1);
            for (std::size_t i = 0; i < grid.size(); ++i)
                grid[i] = bf_t1 * double(i) / double(bf_steps);
            const auto lead = trajectory_leading(bf_x0, bf_M, grid);
            if (bf_corner) {
                const auto corner = corner_trajectory(bf_x0, bf_M, grid);
                run.columns({"t", "re", "im", "lead_re", "lead_im"});
                for (std::size_t i = 0; i < grid.size(); ++i)
                    run.row({grid[i], corner.positions[i].real(), corner.positions[i].imag(),
                             lead.positions[i].real(), lead.positions[i].imag()});
                run.summary("aligned_gap", trajectory_deviation(corner, lead));
            } else {
                run.columns({"t", "re", "im"});
                for (std::size_t i = 0; i < grid.size(); ++i)
                    run.row({grid[i], lead.positions[i].real(), lead.positions[i].imag()});
            }
            run.summary("end_re", lead.positions.back().real());
            run.summary("end_im", lead.positions.back().imag());
            line = run.finalize(out_path, json_path, seed);
        }

        std::cout << line << "\n";
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "rml: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rml: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "rml: numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "rml: numerical failure: " << e.what() << "\n";
        return 3;
    }
}
