#include "qpurity/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpurity/injective.hpp"
#include "qpurity/io.hpp"
#include "qpurity/purity.hpp"
#include "qpurity/rng.hpp"

namespace qpurity {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
    uint64_t seed = 0;
    int restarts = 0;
    int iters = 0;
    double tolerance = 0.0;
    std::string format = "csv";
    std::string output_path;
    bool strict = false;
};

void add_run_options(CLI::App* cmd, CommonOpts& o, bool with_optimizer) {
    cmd->add_option("--seed", o.seed, "random seed")->envname("PURITY_SEED");
    if (with_optimizer) {
        cmd->add_option("--restarts", o.restarts, "multistart restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--iters", o.iters, "iteration budget per restart")->check(CLI::PositiveNumber);
        cmd->add_flag("--strict", o.strict, "exit 3 when the optimizer did not converge");
    }
    cmd->add_option("--tol,--tolerance", o.tolerance, "tolerance override")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", o.output_path, "write the report to this file instead of stdout");
}

OptConfig opt_config(const CommonOpts& o) {
    OptConfig cfg;
    cfg.restarts = o.restarts;
    if (o.iters > 0) cfg.max_iterations = o.iters;
    cfg.tolerance = o.tolerance;
    return cfg;
}

// A report is an ordered key/value list; csv emits `key,value` rows, json an
// object in insertion order.
struct Report {
    std::vector<std::pair<std::string, std::string>> rows;
    std::vector<std::pair<std::string, double>> numeric;  // kept for json typing
    std::vector<std::pair<std::string, long>> counts;

    void add(const std::string& key, double v) {
        rows.emplace_back(key, fmt17(v));
        numeric.emplace_back(key, v);
    }
    void add(const std::string& key, int v) {
        rows.emplace_back(key, std::to_string(v));
        counts.emplace_back(key, v);
    }
    void add(const std::string& key, const std::string& v) { rows.emplace_back(key, v); }

    std::string render(const std::string& format) const {
        if (format == "json") {
            nlohmann::ordered_json j;
            for (const auto& [k, v] : rows) j[k] = v;
            for (const auto& [k, v] : numeric) j[k] = v;
            for (const auto& [k, v] : counts) j[k] = v;
            return j.dump(2) + "\n";
        }
        std::string s = "key,value\n";
        for (const auto& [k, v] : rows) s += k + "," + v + "\n";
        return s;
    }
};

void emit(const std::string& text, const CommonOpts& o, std::ostream& out) {
    if (o.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output_path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + o.output_path + "'");
    f << text;
}

bool parse_wh_source(const std::string& source, int& d) {
    if (source.rfind("wh:", 0) != 0) return false;
    const std::string num = source.substr(3);
    size_t pos = 0;
    try {
        d = std::stoi(num, &pos);
    } catch (const std::exception&) {
        throw ParseError("malformed channel source '" + source + "'");
    }
    if (pos != num.size()) throw ParseError("malformed channel source '" + source + "'");
    return true;
}

Channel load_channel_source(const std::string& source, bool enforce_tp = true) {
    int d = 0;
    if (parse_wh_source(source, d)) return wh_channel(d);
    return load_channel_json(source, enforce_tp);
}

TensorVector load_tensor_source(const std::string& source) {
    if (source == "antisym3") return antisymmetric_vector(3);
    if (source == "antisym3-squared") {
        const TensorVector a = antisymmetric_vector(3);
        return regroup_product(a, a);
    }
    return load_tensor_json(source);
}

// ---- nu-p ------------------------------------------------------------------

int cmd_nu_p(const std::string& source, const std::string& p_text, bool tensor_square, const CommonOpts& o,
             std::ostream& out) {
    const Exponent p = Exponent::parse(p_text);
    int wh_d = 0;
    const bool is_wh = parse_wh_source(source, wh_d);
    Channel ch = load_channel_source(source);
    const int base_dim = ch.dim_in;
    if (tensor_square) ch = tensor(ch, ch);

    const PurityReport rep = nu_p_numeric(ch, p, opt_config(o), o.seed);

    Report r;
    r.add("source", source);
    r.add("p", p.str());
    r.add("tensor_square", std::string(tensor_square ? "1" : "0"));
    if (is_wh) {
        const double analytic = nu_p_wh_analytic(wh_d, p);
        if (!tensor_square) {
            r.add("analytic", analytic);
            r.add("numeric", rep.value);
            r.add("gap", analytic - rep.value);
        } else {
            r.add("product_bound", analytic * analytic);
            r.add("numeric", rep.value);
            r.add("gap", rep.value - analytic * analytic);
        }
    } else {
        r.add("numeric", rep.value);
    }
    r.add("converged", std::string(rep.converged ? "1" : "0"));
    r.add("restarts", rep.restarts_used);
    if (tensor_square) {
        const std::vector<double> sq = schmidt_squares(rep.maximizer, base_dim, base_dim);
        for (size_t i = 0; i < sq.size(); ++i) r.add("maximizer_schmidt_sq_" + std::to_string(i + 1), sq[i]);
    }
    emit(r.render(o.format), o, out);
    return (o.strict && !rep.converged) ? kExitNoConvergence : kExitOk;
}

// ---- delta-sweep -----------------------------------------------------------

int cmd_delta_sweep(double p_min, double p_max, int steps, const std::string& p_extra, const CommonOpts& o,
                    std::ostream& out, std::ostream& err) {
    if (!(p_min > 1.0) || !(p_max > p_min) || steps < 2) throw ParseError("delta-sweep: bad range");
    std::string csv = "p,delta\n";
    double prev = 0.0;
    double sign_lo = 0.0, sign_hi = 0.0;
    bool crossed = false;
    for (int k = 0; k < steps; ++k) {
        const double p = p_min + (p_max - p_min) * static_cast<double>(k) / (steps - 1);
        const double d = delta_max_entangled(Exponent(p));
        csv += fmt17(p) + "," + fmt17(d) + "\n";
        if (k > 0 && !crossed && prev < 0.0 && d >= 0.0) {
            crossed = true;
            sign_lo = p_min + (p_max - p_min) * static_cast<double>(k - 1) / (steps - 1);
            sign_hi = p;
        }
        prev = d;
    }
    if (!p_extra.empty()) {
        const Exponent pe = Exponent::parse(p_extra);
        csv += pe.str() + "," + fmt17(delta_max_entangled(pe)) + "\n";
    }
    emit(csv, o, out);
    if (crossed)
        err << "sign change in (" << fmt17(sign_lo) << "," << fmt17(sign_hi) << ")\n";
    else
        err << "no sign change\n";
    return kExitOk;
}

// ---- find-p0 ---------------------------------------------------------------

int cmd_find_p0(double tol, const CommonOpts& o, std::ostream& out) {
    if (!(tol > 0.0)) throw ParseError("find-p0: tolerance must be positive");
    emit(fmt17(find_p0(tol)) + "\n", o, out);
    return kExitOk;
}

// ---- schmidt-scan ----------------------------------------------------------

int cmd_schmidt_scan(const std::string& p_text, int grid_n, const CommonOpts& o, std::ostream& out,
                     std::ostream& err) {
    const Exponent p = Exponent::parse(p_text);
    if (grid_n < 1) throw ParseError("schmidt-scan: grid must be >= 1");
    const ScanResult res = schmidt_scan(p, grid_n);
    std::string csv = "c1sq,c2sq,delta\n";
    for (const auto& pt : res.points) csv += fmt17(pt.c1sq) + "," + fmt17(pt.c2sq) + "," + fmt17(pt.delta) + "\n";
    emit(csv, o, out);
    const ScanPoint& top = res.points[res.argmax];
    err << "argmax c1sq=" << fmt17(top.c1sq) << " c2sq=" << fmt17(top.c2sq) << " delta=" << fmt17(top.delta) << "\n";
    return kExitOk;
}

// ---- mu --------------------------------------------------------------------

int cmd_mu(const std::string& source, const CommonOpts& o, std::ostream& out) {
    const TensorVector v = load_tensor_source(source);
    const RankOneFit fit = mu(v, opt_config(o), o.seed);
    Report r;
    r.add("source", source);
    r.add("norm", v.norm());
    r.add("value", fit.value);
    r.add("converged", std::string(fit.converged ? "1" : "0"));
    r.add("restarts", fit.restarts_used);
    emit(r.render(o.format), o, out);
    return (o.strict && !fit.converged) ? kExitNoConvergence : kExitOk;
}

// ---- verify ----------------------------------------------------------------

int cmd_verify(const std::string& source, int trials, const CommonOpts& o, std::ostream& out) {
    const double tolerance = o.tolerance > 0.0 ? o.tolerance : 1e-10;
    int wh_d = 0;
    const bool is_wh = parse_wh_source(source, wh_d);
    const Channel ch = load_channel_source(source, /*enforce_tp=*/false);

    struct Check {
        std::string name;
        double residual;
    };
    std::vector<Check> checks;

    checks.push_back({"trace_preserving", tp_residual(ch)});
    {
        const Spectrum cs = eig_hermitian(choi(ch));
        checks.push_back({"choi_psd", std::max(0.0, -cs.values.back())});
    }
    if (is_wh && ch.dim_in == ch.dim_out) {
        double linear = 0.0, cov = 0.0, hs = 0.0;
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_seed(o.seed, static_cast<uint64_t>(t)));
            const ComplexMatrix rho = rng.random_density(ch.dim_in);
            const ComplexMatrix u = rng.haar_unitary(ch.dim_in);
            const ComplexMatrix a = rng.gaussian_matrix(ch.dim_in, ch.dim_in);
            const ComplexMatrix b = rng.gaussian_matrix(ch.dim_in, ch.dim_in);
            linear = std::max(linear, (apply(ch, rho) - wh_linear_form(rho)).frobenius_norm());
            cov = std::max(cov, covariance_residual(ch, u, rho));
            hs = std::max(hs, hs_hermiticity_residual(ch, a, b));
        }
        checks.push_back({"kraus_vs_linear", linear});
        checks.push_back({"covariance", cov});
        checks.push_back({"hs_hermitian", hs});
    }

    bool all_pass = true;
    Report r;
    r.add("source", source);
    r.add("trials", trials);
    r.add("tolerance", tolerance);
    for (const auto& c : checks) {
        const bool pass = c.residual <= tolerance;
        all_pass = all_pass && pass;
        r.add(c.name + "_residual", c.residual);
        r.add(c.name, std::string(pass ? "pass" : "fail"));
    }
    r.add("result", std::string(all_pass ? "pass" : "fail"));
    emit(r.render(o.format), o, out);
    return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"maximal output p-norms of quantum channels and injective tensor norms", "qpurity"};
    app.require_subcommand(1);

    // nu-p
    std::string nup_source, nup_p = "2";
    bool nup_square = false;
    CommonOpts nup_opts;
    CLI::App* nup = app.add_subcommand("nu-p", "maximal output p-norm of a channel");
    nup->add_option("source", nup_source, "builtin wh:d or a channel JSON path")->required();
    nup->add_option("--p", nup_p, "Schatten exponent > 1, or inf")->required();
    nup->add_flag("--tensor-square", nup_square, "analyze the doubled channel S x S");
    add_run_options(nup, nup_opts, true);

    // delta-sweep
    double ds_min = 2.0, ds_max = 10.0;
    int ds_steps = 81;
    std::string ds_extra;
    CommonOpts ds_opts;
    CLI::App* ds = app.add_subcommand("delta-sweep", "additivity gap at the maximally entangled input over p");
    ds->add_option("--p-min", ds_min, "lower end of the sweep (> 1)");
    ds->add_option("--p-max", ds_max, "upper end of the sweep");
    ds->add_option("--steps", ds_steps, "number of rows");
    ds->add_option("--p", ds_extra, "extra exponent appended as a final row (e.g. inf)");
    add_run_options(ds, ds_opts, false);

    // find-p0
    double p0_tol = 1e-6;
    CommonOpts p0_opts;
    CLI::App* p0 = app.add_subcommand("find-p0", "critical exponent where the gap changes sign");
    p0->add_option("--tol", p0_tol, "bracket and residual tolerance")->check(CLI::PositiveNumber);
    p0->add_option("-o,--output", p0_opts.output_path, "write to file");

    // schmidt-scan
    std::string sc_p = "4";
    int sc_grid = 60;
    CommonOpts sc_opts;
    CLI::App* sc = app.add_subcommand("schmidt-scan", "gap over the Schmidt simplex for d = 3");
    sc->add_option("--p", sc_p, "Schatten exponent > 1, or inf")->required();
    sc->add_option("--grid", sc_grid, "simplex grid resolution");
    add_run_options(sc, sc_opts, false);

    // mu
    std::string mu_source;
    CommonOpts mu_opts;
    CLI::App* muc = app.add_subcommand("mu", "injective tensor norm of a vector");
    muc->add_option("source", mu_source, "builtin antisym3, antisym3-squared, or a tensor JSON path")->required();
    add_run_options(muc, mu_opts, true);

    // verify
    std::string vf_source;
    int vf_trials = 50;
    CommonOpts vf_opts;
    CLI::App* vf = app.add_subcommand("verify", "structural residual checks on a channel");
    vf->add_option("source", vf_source, "builtin wh:d or a channel JSON path")->required();
    vf->add_option("--trials", vf_trials, "random instances per randomized check")->check(CLI::PositiveNumber);
    add_run_options(vf, vf_opts, false);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (nup->parsed()) return cmd_nu_p(nup_source, nup_p, nup_square, nup_opts, out);
        if (ds->parsed()) return cmd_delta_sweep(ds_min, ds_max, ds_steps, ds_extra, ds_opts, out, err);
        if (p0->parsed()) return cmd_find_p0(p0_tol, p0_opts, out);
        if (sc->parsed()) return cmd_schmidt_scan(sc_p, sc_grid, sc_opts, out, err);
        if (muc->parsed()) return cmd_mu(mu_source, mu_opts, out);
        if (vf->parsed()) return cmd_verify(vf_source, vf_trials, vf_opts, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace qpurity
