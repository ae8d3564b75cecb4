/*
   Copyright 2026 The rpf-lab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "rpf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpf/condition_checker.hpp"
#include "rpf/dynamics.hpp"
#include "rpf/ensembles.hpp"
#include "rpf/error.hpp"
#include "rpf/estimator.hpp"
#include "rpf/interactions.hpp"
#include "rpf/io.hpp"
#include "rpf/special_fns.hpp"

namespace rpf::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Options of one subcommand, remembered so the resolved values can be
// written back as a config object that reproduces the run.
class OptionSet {
public:
    explicit OptionSet(CLI::App* app) : app_(app) {}

    template <class T>
    CLI::Option* add(const std::string& name, T& var, const std::string& help) {
        items_.emplace_back(name, [&var] { return json(var); });
        return app_->add_option("--" + name, var, help);
    }

    CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
        items_.emplace_back(name, [&var] { return json(var); });
        return app_->add_flag("--" + name, var, help);
    }

    [[nodiscard]] json resolved() const {
        json out = json::object();
        for (const auto& [name, get] : items_) out[name] = get();
        return out;
    }

    [[nodiscard]] CLI::App* app() const noexcept { return app_; }

private:
    CLI::App* app_;
    std::vector<std::pair<std::string, std::function<json()>>> items_;
};

struct Common {
    std::string out_dir = ".";
    std::size_t workers = 1;
    std::uint64_t seed = 0;
};

std::size_t env_workers() {
    if (const char* v = std::getenv("RPF_LAB_WORKERS")) {
        try {
            const long w = std::stol(v);
            if (w >= 1) return static_cast<std::size_t>(w);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

void add_common(OptionSet& opts, CLI::App* app, Common& common) {
    app->add_option("--out-dir", common.out_dir, "output directory (created if missing)");
    app->add_option("--workers", common.workers, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
    app->add_option("--config", "JSON config file; flags override its values");
    opts.add("seed", common.seed, "master seed");
}

fs::path output_path(const Common& common, const std::string& name) {
    fs::path dir(common.out_dir);
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot write " + path.string());
    f << content;
    if (!f) throw ArgumentError("failed writing " + path.string());
}

std::string csv_header(const json& config) { return "# config: " + config.dump() + "\n"; }

void write_report(const Common& common, const std::string& name, json body, const json& config,
                  std::ostream& out) {
    body["config"] = config;
    const auto path = output_path(common, name);
    write_file(path, body.dump(2) + "\n");
    out << path.string() << "\n";
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ArgumentError(msg);
}

// Replaces "--config FILE" by the file's entries as flags placed before the
// remaining user flags, so flags given explicitly take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    if (args.empty()) return args;
    std::vector<std::string> rest;
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ArgumentError("--config needs a file");
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    std::vector<std::string> out{args[0]};
    if (!path.empty()) {
        std::ifstream f(path);
        if (!f) throw ArgumentError("cannot read config file " + path);
        json cfg;
        try {
            f >> cfg;
        } catch (const json::exception& e) {
            throw ArgumentError("config file " + path + ": " + e.what());
        }
        if (cfg.contains("config") && cfg["config"].is_object()) cfg = cfg["config"];
        if (!cfg.is_object()) throw ArgumentError("config file must hold a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            if (value.is_boolean()) {
                if (value.get<bool>()) out.push_back("--" + key);
                continue;
            }
            out.push_back("--" + key);
            if (value.is_array()) {
                std::string joined;
                for (std::size_t i = 0; i < value.size(); ++i) {
                    if (i) joined += ",";
                    joined += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
                }
                out.push_back(joined);
            } else {
                out.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
        }
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

// ---------------------------------------------------------------------------

struct EnsembleArgs {
    double beta = 2.0;
    std::size_t n = 100;
    std::string scaling = "raw";
    std::string method = "tridiagonal";
    std::size_t replicas = 10;
};

void add_ensemble(OptionSet& o, EnsembleArgs& e) {
    o.add("beta", e.beta, "inverse temperature");
    o.add("n", e.n, "matrix size");
    o.add("scaling", e.scaling, "raw | bulk | softedge");
    o.add("method", e.method, "dense | tridiagonal");
    o.add("replicas", e.replicas, "number of independent samples");
}

EnsembleSpec to_spec(const EnsembleArgs& e, std::uint64_t seed) {
    EnsembleSpec spec;
    spec.beta = e.beta;
    spec.n = e.n;
    spec.scaling = parse_scaling(e.scaling);
    spec.method = parse_method(e.method);
    spec.seed = seed;
    spec.validate();
    return spec;
}

double semicircle(double x) {
    return std::abs(x) < 2.0 ? std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi) : 0.0;
}

std::string join_row(std::initializer_list<double> cells) {
    std::string s;
    bool first = true;
    for (double c : cells) {
        if (!first) s += ",";
        s += format_double(c);
        first = false;
    }
    return s + "\n";
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"rpf_lab: finite-N random point field experiments"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::map<std::string, std::unique_ptr<OptionSet>> sets;
    std::map<std::string, std::function<void()>> handlers;
    Common common;
    common.workers = env_workers();
    auto make = [&](const std::string& name, const std::string& help) -> OptionSet& {
        auto* sub = app.add_subcommand(name, help);
        auto& o = *(sets[name] = std::make_unique<OptionSet>(sub));
        add_common(o, sub, common);
        return o;
    };

    // sample ---------------------------------------------------------------
    EnsembleArgs sample_args;
    {
        auto& o = make("sample", "eigenvalue samples of a Gaussian beta-ensemble");
        add_ensemble(o, sample_args);
        handlers["sample"] = [&] {
            const auto spec = to_spec(sample_args, common.seed);
            require(sample_args.replicas >= 1, "--replicas must be at least 1");
            const auto samples = sample_replicas(spec, sample_args.replicas, common.workers);
            std::string csv = csv_header(sets["sample"]->resolved()) + "replica,re,im\n";
            for (std::size_t i = 0; i < samples.size(); ++i)
                for (const auto& p : samples[i])
                    csv += std::to_string(i) + "," + format_double(p.real()) + "," +
                           format_double(p.imag()) + "\n";
            const auto path = output_path(common, "samples.csv");
            write_file(path, csv);
            out << path.string() << "\n";
        };
    }

    // kernel-table ---------------------------------------------------------
    std::string kt_kernel = "airy";
    double kt_lo = -6.0, kt_hi = 3.0;
    std::size_t kt_points = 31;
    {
        auto& o = make("kernel-table", "grid of K(x, y) and the one-point density K(x, x)");
        o.add("kernel", kt_kernel, "airy | sine");
        o.add("x-min", kt_lo, "grid start");
        o.add("x-max", kt_hi, "grid end");
        o.add("points", kt_points, "grid points per axis");
        handlers["kernel-table"] = [&] {
            const auto kind = parse_kernel(kt_kernel);
            require(kt_points >= 2 && kt_hi > kt_lo, "need --points >= 2 and --x-min < --x-max");
            std::string csv = csv_header(sets["kernel-table"]->resolved()) + "x,y,K,rho1\n";
            for (std::size_t i = 0; i < kt_points; ++i) {
                const double x = kt_lo + (kt_hi - kt_lo) * static_cast<double>(i) /
                                             static_cast<double>(kt_points - 1);
                const double rho = kernel(kind, x, x);
                for (std::size_t j = 0; j < kt_points; ++j) {
                    const double y = kt_lo + (kt_hi - kt_lo) * static_cast<double>(j) /
                                                 static_cast<double>(kt_points - 1);
                    csv += join_row({x, y, kernel(kind, x, y), rho});
                }
            }
            const auto path = output_path(common, "kernel_table.csv");
            write_file(path, csv);
            out << path.string() << "\n";
        };
    }

    // correlate ------------------------------------------------------------
    EnsembleArgs corr_args;
    corr_args.scaling = "softedge";
    corr_args.replicas = 200;
    int corr_order = 1;
    std::string corr_predict = "auto";
    double corr_lo = std::nan(""), corr_hi = std::nan(""), corr_width = std::nan("");
    CLI::Option *lo_opt = nullptr, *hi_opt = nullptr, *width_opt = nullptr;
    {
        auto& o = make("correlate", "binned one- or two-point correlation function");
        add_ensemble(o, corr_args);
        o.add("order", corr_order, "correlation order, 1 or 2");
        o.add("predict", corr_predict, "auto | airy | sine | semicircle | none");
        lo_opt = o.add("bin-lo", corr_lo, "first bin edge");
        hi_opt = o.add("bin-hi", corr_hi, "last bin edge");
        width_opt = o.add("bin-width", corr_width, "bin width");
        handlers["correlate"] = [&] {
            const auto spec = to_spec(corr_args, common.seed);
            require(corr_order == 1 || corr_order == 2, "--order must be 1 or 2");
            require(corr_args.replicas >= 2, "--replicas must be at least 2");
            // Scaling-dependent defaults for the analysis window.
            const bool soft = spec.scaling == ScalingKind::softedge;
            const bool bulk = spec.scaling == ScalingKind::bulk;
            const double root = 2.0 * std::sqrt(static_cast<double>(spec.n));
            if (!lo_opt->count()) corr_lo = soft ? -6.0 : bulk ? -2.5 : -root - 1.0;
            if (!hi_opt->count()) corr_hi = soft ? 3.0 : bulk ? 2.5 : root + 1.0;
            if (!width_opt->count()) corr_width = soft ? 0.1 : bulk ? 0.05 : 0.1;
            if (corr_predict == "auto") corr_predict = soft ? "airy" : bulk ? "semicircle" : "none";
            require(corr_predict == "airy" || corr_predict == "sine" ||
                        corr_predict == "semicircle" || corr_predict == "none",
                    "unknown --predict '" + corr_predict + "'");
            require(!(corr_predict == "semicircle" && corr_order == 2),
                    "semicircle prediction is one-point only");
            const auto edges = uniform_edges(corr_lo, corr_hi, corr_width);
            const auto samples = sample_replicas(spec, corr_args.replicas, common.workers);
            const auto est = estimate_correlation(samples, corr_order, edges);

            std::vector<double> pred;
            const double nn = static_cast<double>(spec.n);
            if (corr_predict == "semicircle") {
                pred = bin_averaged(est, [nn](double x) { return nn * semicircle(x); });
            } else if (corr_predict != "none") {
                const auto kind = parse_kernel(corr_predict);
                if (corr_order == 1)
                    pred = bin_averaged(est, [kind](double x) { return kernel(kind, x, x); });
                else
                    pred = bin_averaged(est, [kind](double x, double y) {
                        const double kxy = kernel(kind, x, y);
                        return kernel(kind, x, x) * kernel(kind, y, y) - kxy * kxy;
                    });
            }
            DeviationReport dev;
            if (!pred.empty()) dev = compare_to_prediction(est, pred);
            const double nan = std::nan("");
            std::string csv = csv_header(sets["correlate"]->resolved());
            const std::size_t nb = est.bins();
            if (corr_order == 1) {
                csv += "bin_lo,bin_hi,estimate,stderr,prediction,z\n";
                for (std::size_t i = 0; i < nb; ++i)
                    csv += join_row({est.edges[i], est.edges[i + 1], est.estimate[i], est.std_error[i],
                                     pred.empty() ? nan : pred[i], pred.empty() ? nan : dev.z[i]});
            } else {
                csv += "x_lo,x_hi,y_lo,y_hi,estimate,stderr,prediction,z\n";
                for (std::size_t i = 0; i < nb; ++i)
                    for (std::size_t j = 0; j < nb; ++j) {
                        const std::size_t c = i * nb + j;
                        csv += join_row({est.edges[i], est.edges[i + 1], est.edges[j], est.edges[j + 1],
                                         est.estimate[c], est.std_error[c],
                                         pred.empty() ? nan : pred[c], pred.empty() ? nan : dev.z[c]});
                    }
            }
            const auto path = output_path(common, "correlation.csv");
            write_file(path, csv);
            out << path.string() << "\n";
        };
    }

    // check-h4 -------------------------------------------------------------
    H4Params h4;
    std::string h4_scaling = "softedge";
    {
        auto& o = make("check-h4", "tail integrals and moment norms");
        o.add("beta", h4.beta, "inverse temperature");
        o.add("n-grid", h4.n_grid, "increasing ensemble sizes")->delimiter(',');
        o.add("scaling", h4_scaling, "raw | bulk | softedge");
        o.add("ell0", h4.ell0, "tail exponent, at least 2");
        o.add("r", h4.r, "inner window index");
        o.add("s-max", h4.s_max, "largest finite annulus index");
        o.add("replicas", h4.replicas, "replicas per ensemble size");
        o.add("p-max", h4.p_max, "compensator family truncation");
        handlers["check-h4"] = [&] {
            h4.scaling = parse_scaling(h4_scaling);
            h4.seed = common.seed;
            h4.workers = common.workers;
            const auto rep = check_h4(h4);
            write_report(common, "h4.json", rep.to_json(), sets["check-h4"]->resolved(), out);
        };
    }

    // check-h5 -------------------------------------------------------------
    H5Params h5;
    std::string h5_scaling = "softedge";
    {
        auto& o = make("check-h5", "U and V set probabilities with Chebyshev bounds");
        o.add("beta", h5.beta, "inverse temperature");
        o.add("n", h5.n, "ensemble size");
        o.add("scaling", h5_scaling, "raw | bulk | softedge");
        o.add("ell0", h5.ell0, "tail exponent, at least 2");
        o.add("r", h5.r, "inner window index");
        o.add("s-max", h5.s_max, "largest finite annulus index");
        o.add("k-grid", h5.k_grid, "thresholds k > 0")->delimiter(',');
        o.add("replicas", h5.replicas, "number of replicas");
        handlers["check-h5"] = [&] {
            h5.scaling = parse_scaling(h5_scaling);
            h5.seed = common.seed;
            h5.workers = common.workers;
            const auto rep = check_h5(h5);
            write_report(common, "h5.json", rep.to_json(), sets["check-h5"]->resolved(), out);
        };
    }

    // check-h3 -------------------------------------------------------------
    H3Params h3;
    std::string h3_scaling = "softedge";
    {
        auto& o = make("check-h3", "upper estimates of the probability of the complement of H_{r,k}");
        o.add("beta", h3.beta, "inverse temperature");
        o.add("n-grid", h3.n_grid, "increasing ensemble sizes")->delimiter(',');
        o.add("scaling", h3_scaling, "raw | bulk | softedge");
        o.add("ell0", h3.ell0, "tail exponent, at least 2");
        o.add("r", h3.r, "inner window index");
        o.add("s-max", h3.s_max, "largest finite annulus index");
        o.add("k-grid", h3.k_grid, "thresholds k")->delimiter(',');
        o.add("replicas", h3.replicas, "replicas per ensemble size");
        handlers["check-h3"] = [&] {
            h3.scaling = parse_scaling(h3_scaling);
            h3.seed = common.seed;
            h3.workers = common.workers;
            const auto rep = check_h3(h3);
            write_report(common, "h3.json", rep.to_json(), sets["check-h3"]->resolved(), out);
        };
    }

    // qg-probe -------------------------------------------------------------
    QgProbeParams qg;
    std::size_t qg_n = 0;
    {
        auto& o = make("qg-probe", "oscillation of the conditional density ratio in a window");
        o.add("beta", qg.beta, "inverse temperature");
        o.add("n", qg_n, "single ensemble size (overrides --n-grid when nonzero)");
        o.add("n-grid", qg.n_grid, "increasing ensemble sizes")->delimiter(',');
        o.add("m-inside", qg.m_inside, "points inside the window: 1, 2 or 3");
        o.add("r", qg.r, "window index");
        o.add("outer", qg.outer, "outer configurations per ensemble size");
        o.add("grid-points", qg.grid_points, "inner grid points");
        handlers["qg-probe"] = [&] {
            if (qg_n != 0) qg.n_grid = {qg_n};
            qg.seed = common.seed;
            qg.workers = common.workers;
            const auto rep = quasi_gibbs_probe(qg);
            write_report(common, "qg_probe.json", rep.to_json(), sets["qg-probe"]->resolved(), out);
        };
    }

    // simulate -------------------------------------------------------------
    EnsembleArgs sim_args;
    sim_args.n = 10;
    double sim_dt = 0.0, sim_T = 1.0;
    std::size_t sim_every = 100;
    bool sim_zero_noise = false, sim_flip = false;
    {
        auto& o = make("simulate", "one trajectory of the log-gas SDE from an exact sample");
        o.add("beta", sim_args.beta, "inverse temperature");
        o.add("n", sim_args.n, "number of particles");
        o.add("scaling", sim_args.scaling, "raw | bulk | softedge");
        o.add("dt", sim_dt, "time step; 0 selects 1e-3 (mean gap)^2");
        o.add("T", sim_T, "final time");
        o.add("record-every", sim_every, "steps between recorded states");
        o.flag("zero-noise", sim_zero_noise, "drift only");
        o.flag("flip-confinement", sim_flip, "confinement force with the wrong sign");
        handlers["simulate"] = [&] {
            const auto spec = to_spec(sim_args, common.seed);
            const auto init = sample_gaussian_beta(spec);
            const auto x0 = apply_scaling(init, spec.n, spec.scaling).reals();
            if (sim_dt == 0.0) sim_dt = default_time_step(x0);
            SdeState s0;
            s0.positions = x0;
            SdeOptions opt;
            opt.record_every = sim_every;
            opt.zero_noise = sim_zero_noise;
            opt.flip_confinement = sim_flip;
            const auto traj = simulate_isde(s0, spec.beta, spec.n, spec.scaling, sim_dt, sim_T,
                                            common.seed, opt);
            std::string csv = csv_header(sets["simulate"]->resolved()) + "time";
            for (std::size_t i = 1; i <= spec.n; ++i) csv += ",x" + std::to_string(i);
            csv += "\n";
            for (std::size_t k = 0; k < traj.times.size(); ++k) {
                csv += format_double(traj.times[k]);
                for (double v : traj.states[k]) csv += "," + format_double(v);
                csv += "\n";
            }
            const auto path = output_path(common, "trajectory.csv");
            write_file(path, csv);
            out << path.string() << "\n";
        };
    }

    // invariance -----------------------------------------------------------
    EnsembleArgs inv_args;
    inv_args.n = 20;
    inv_args.replicas = 500;
    double inv_dt = 1e-3, inv_T = 1.0;
    bool inv_flip = false;
    {
        auto& o = make("invariance", "stationarity of the ensemble under the SDE");
        o.add("beta", inv_args.beta, "inverse temperature");
        o.add("n", inv_args.n, "number of particles");
        o.add("scaling", inv_args.scaling, "raw | bulk | softedge");
        o.add("replicas", inv_args.replicas, "number of replicas");
        o.add("dt", inv_dt, "time step");
        o.add("T", inv_T, "final time");
        o.flag("flip-confinement", inv_flip, "negative control: wrong confinement sign");
        handlers["invariance"] = [&] {
            const auto spec = to_spec(inv_args, common.seed);
            const auto rep = invariance_report(spec.beta, spec.n, spec.scaling, inv_dt, inv_T,
                                               inv_args.replicas, common.seed, common.workers,
                                               inv_flip);
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"statistic", r.statistic}, {"initial", json_number(r.initial)},
                                {"final", json_number(r.final)}, {"stderr", json_number(r.std_error)},
                                {"z", json_number(r.z)}});
            json body{{"condition", "invariance"},
                      {"table", rows},
                      {"verdicts",
                       {{"max_abs_z", json_number(rep.max_abs_z)}, {"within_3", rep.max_abs_z <= 3.0}}},
                      {"halvings", rep.halvings},
                      {"seed", common.seed},
                      {"replicas", inv_args.replicas}};
            write_report(common, "invariance.json", body, sets["invariance"]->resolved(), out);
        };
    }

    // taylor-check ---------------------------------------------------------
    std::size_t tc_trials = 1000;
    int tc_order = 60;
    double tc_beta = 2.0, tc_ratio = 0.9;
    bool tc_planar = false;
    {
        auto& o = make("taylor-check", "truncated expansion of the log interaction vs direct values");
        o.add("trials", tc_trials, "random instances");
        o.add("order", tc_order, "truncation order");
        o.add("beta", tc_beta, "interaction strength");
        o.add("max-ratio", tc_ratio, "largest |x|/|y_j|, below 1");
        o.flag("planar", tc_planar, "complex points instead of real ones");
        handlers["taylor-check"] = [&] {
            const auto s = taylor_check(tc_trials, tc_order, tc_beta, tc_ratio, common.seed, tc_planar);
            json body{{"condition", "taylor"},
                      {"table", json::array({{{"trials", s.trials},
                                              {"violations", s.violations},
                                              {"max_error", json_number(s.max_error)},
                                              {"max_error_over_bound",
                                               json_number(s.max_error_over_bound)}}})},
                      {"verdicts", {{"no_violations", s.violations == 0}}},
                      {"seed", common.seed},
                      {"replicas", s.trials}};
            write_report(common, "taylor_check.json", body, sets["taylor-check"]->resolved(), out);
        };
    }

    // lipschitz-check ------------------------------------------------------
    std::size_t lc_trials = 1000, lc_r = 1, lc_grid = 50;
    int lc_ell0 = 3;
    double lc_beta = 2.0;
    bool lc_planar = false;
    {
        auto& o = make("lipschitz-check", "grid sup of the Lipschitz ratio vs its certified bound");
        o.add("trials", lc_trials, "random instances");
        o.add("beta", lc_beta, "interaction strength");
        o.add("ell0", lc_ell0, "tail exponent, at least 2");
        o.add("r", lc_r, "window index");
        o.add("grid-points", lc_grid, "grid points per axis");
        o.flag("planar", lc_planar, "complex points instead of real ones");
        handlers["lipschitz-check"] = [&] {
            const auto s = lipschitz_check(lc_trials, lc_beta, lc_ell0, lc_r, lc_grid, common.seed,
                                           common.workers, lc_planar);
            json body{{"condition", "lipschitz"},
                      {"table", json::array({{{"trials", s.trials},
                                              {"violations", s.violations},
                                              {"max_sup_over_bound",
                                               json_number(s.max_sup_over_bound)},
                                              {"per_order_violations", s.per_order_violations},
                                              {"max_sup_over_per_order_bound",
                                               json_number(s.max_sup_over_per_order_bound)}}})},
                      {"verdicts", {{"no_violations", s.violations == 0}}},
                      {"seed", common.seed},
                      {"replicas", s.trials}};
            write_report(common, "lipschitz_check.json", body, sets["lipschitz-check"]->resolved(),
                         out);
        };
    }

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return kExitInvalid;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        for (auto* sub : app.get_subcommands()) handlers.at(sub->get_name())();
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const RangeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace rpf::cli
