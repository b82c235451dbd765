// speclab: numerical laboratory for the spectra and eigenvectors of critical
// Erdos-Renyi graphs and general sparse Hermitian matrices.
//
// Subcommands: sample | spectrum | local-law | phase-diagram | degree-tails |
// stieltjes. Every run writes a manifest next to its outputs; re-running with
// `--config <manifest>` reproduces the data files byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "speclab/degree_tails.hpp"
#include "speclab/io.hpp"
#include "speclab/local_law.hpp"
#include "speclab/matrix_model.hpp"
#include "speclab/resolvent.hpp"
#include "speclab/spectral_lab.hpp"
#include "speclab/stieltjes.hpp"
#include "speclab/threading.hpp"

namespace fs = std::filesystem;
using namespace speclab;

namespace {

// Resolution order: command-line flag > config file > environment (seed and
// threads only) > built-in default.
struct Params {
    Config file;

    std::uint64_t resolve_uint(const std::optional<std::uint64_t>& cli, const std::string& key,
                               std::uint64_t def, const char* env = nullptr) const {
        if (cli) return *cli;
        if (auto v = file.get_uint(key)) return *v;
        if (env)
            if (const char* e = std::getenv(env)) return std::strtoull(e, nullptr, 10);
        return def;
    }
    double resolve_double(const std::optional<double>& cli, const std::string& key,
                          double def) const {
        if (cli) return *cli;
        if (auto v = file.get_double(key)) return *v;
        return def;
    }
    std::string resolve_string(const std::optional<std::string>& cli, const std::string& key,
                               const std::string& def) const {
        if (cli) return *cli;
        if (auto v = file.get(key)) return *v;
        return def;
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<EnergyWindow> parse_windows(const std::string& text) {
    std::vector<EnergyWindow> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("window must look like lo:hi, got " + item);
        EnergyWindow w;
        w.lo = std::stod(item.substr(0, colon));
        const std::string hi = item.substr(colon + 1);
        w.hi = (hi == "inf") ? std::numeric_limits<double>::infinity() : std::stod(hi);
        out.push_back(w);
    }
    return out;
}

std::string windows_to_string(const std::vector<EnergyWindow>& windows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (i) out << ',';
        out << format_float(windows[i].lo) << ':';
        if (std::isinf(windows[i].hi))
            out << "inf";
        else
            out << format_float(windows[i].hi);
    }
    return out.str();
}

std::string doubles_to_string(const std::vector<double>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_float(v[i]);
    }
    return out.str();
}

struct RunContext {
    std::string command;
    fs::path out_dir;
    RunManifest manifest;

    explicit RunContext(std::string cmd, const fs::path& out) : command(std::move(cmd)), out_dir(out) {
        fs::create_directories(out_dir);
        manifest.command = command;
        manifest.tool_version = tool_version();
        manifest.started = iso8601_utc_now();
    }
    void add_output(const std::string& name) { manifest.outputs.push_back(name); }
    void finish() {
        manifest.finished = iso8601_utc_now();
        manifest.write(out_dir / "manifest.txt");
    }
};

void check_manifest_command(const Params& p, const std::string& command) {
    if (auto cmd = p.file.get("command"); cmd && *cmd != command)
        throw std::runtime_error("config file is a manifest for '" + *cmd +
                                 "', not for '" + command + "'");
}

// ---------------------------------------------------------------- sample ---

struct SampleArgs {
    std::optional<std::uint64_t> N, seed, dense_threshold;
    std::optional<double> b, d, kappa, f, entry_scale;
    std::optional<std::string> ensemble;
    std::string out = "speclab-out";
    std::string config_path;
};

ModelConfig resolve_model_config(const Params& p, const SampleArgs& a) {
    ModelConfig cfg;
    cfg.N = static_cast<std::uint32_t>(p.resolve_uint(a.N, "N", 1000));
    if (a.d)
        cfg.d = *a.d;
    else if (a.b)
        cfg.d = *a.b * std::log(double(cfg.N));
    else if (auto v = p.file.get_double("d"))
        cfg.d = *v;
    else
        cfg.d = 1.0 * std::log(double(cfg.N));
    cfg.kappa = p.resolve_double(a.kappa, "kappa", 0.1);
    cfg.seed = p.resolve_uint(a.seed, "seed", 1, "SPECLAB_SEED");
    cfg.f = p.resolve_double(a.f, "f", 0.0);
    cfg.entry_scale = p.resolve_double(a.entry_scale, "entry_scale", 0.0);
    cfg.dense_threshold =
        static_cast<std::uint32_t>(p.resolve_uint(a.dense_threshold, "dense_threshold", 8192));
    return cfg;
}

void record_model_config(Config& c, const ModelConfig& cfg, const std::string& ensemble) {
    c.set_uint("N", cfg.N);
    c.set_double("d", cfg.d);
    c.set_double("kappa", cfg.kappa);
    c.set_uint("seed", cfg.seed);
    c.set_double("f", cfg.f);
    c.set_double("entry_scale", cfg.entry_scale);
    c.set_uint("dense_threshold", cfg.dense_threshold);
    c.set("ensemble", ensemble);
}

int cmd_sample(const SampleArgs& a) {
    Params p;
    if (!a.config_path.empty()) p.file = Config::load(a.config_path);
    check_manifest_command(p, "sample");
    const std::string ensemble = [&] {
        std::string e = p.resolve_string(a.ensemble, "ensemble", "er");
        return e == "er" ? e : to_string(entry_law_from_string(e));
    }();
    ModelConfig cfg = resolve_model_config(p, a);

    RunContext run("sample", a.out);
    record_model_config(run.manifest.config, cfg, ensemble);

    if (ensemble == "er") {
        const SparseHermitianModel model = sample_er_adjacency(cfg);
        write_edge_list(run.out_dir / "edges.txt", model.edges);
        write_adjacency(run.out_dir / "adjacency.splb", model.N, model.edges);
        run.add_output("edges.txt");
        run.add_output("adjacency.splb");
        std::cout << "sampled G(" << model.N << ", d/N) with d = " << model.d << ": "
                  << model.edges.size() << " edges\n";
    } else {
        const SparseHermitianModel model =
            sample_generic_sparse(cfg, entry_law_from_string(ensemble));
        write_dense(run.out_dir / "matrix.splb", model.H);
        run.add_output("matrix.splb");
        std::cout << "sampled " << ensemble << " H, N = " << model.N << "\n";
    }
    run.finish();
    return 0;
}

// -------------------------------------------------------------- spectrum ---

struct SpectrumArgs {
    SampleArgs base;
    std::optional<std::string> rescale;
    std::optional<double> delta_out, kappa_window, kappa_test;
};

int cmd_spectrum(const SpectrumArgs& a) {
    Params p;
    if (!a.base.config_path.empty()) p.file = Config::load(a.base.config_path);
    check_manifest_command(p, "spectrum");
    ModelConfig cfg = resolve_model_config(p, a.base);
    const std::string ensemble = [&] {
        std::string e = p.resolve_string(a.base.ensemble, "ensemble", "er");
        return e == "er" ? e : to_string(entry_law_from_string(e));
    }();
    const std::string rescale_s = p.resolve_string(a.rescale, "rescale", "by-sqrt-d");
    const double delta_out = p.resolve_double(a.delta_out, "delta_out", 0.3);
    const double kappa_window = p.resolve_double(a.kappa_window, "kappa_window", 0.3);
    const double kappa_test = p.resolve_double(a.kappa_test, "kappa_test", 0.3);

    const SparseHermitianModel model =
        ensemble == "er" ? sample_er_adjacency(cfg)
                         : sample_generic_sparse(cfg, entry_law_from_string(ensemble));
    const Rescale rescale = rescale_s == "raw" ? Rescale::raw : Rescale::by_sqrt_d;
    const EigenReport report = eigen_full(model, rescale, delta_out, kappa_window);
    const VerdictRecord everywhere =
        delocalization_verdict(report, VerdictRegime::everywhere, kappa_test);
    const VerdictRecord bulk = delocalization_verdict(report, VerdictRegime::bulk, kappa_test);

    RunContext run("spectrum", a.base.out);
    record_model_config(run.manifest.config, cfg, ensemble);
    run.manifest.config.set("rescale", rescale_s);
    run.manifest.config.set_double("delta_out", delta_out);
    run.manifest.config.set_double("kappa_window", kappa_window);
    run.manifest.config.set_double("kappa_test", kappa_test);

    std::ostringstream csv;
    csv << "index,eigenvalue,q\n";
    for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k)
        csv << k << ',' << format_float(report.eigenvalues[k]) << ','
            << format_float(report.q_values[k]) << '\n';
    write_file_atomic(run.out_dir / "spectrum.csv", csv.str());
    run.add_output("spectrum.csv");

    nlohmann::ordered_json j;
    j["N"] = report.N;
    j["d"] = report.d;
    j["rescale"] = rescale_s;
    j["outlier_index"] = report.outlier_index;
    j["zero_mode_vertices"] = report.zero_mode_vertices;
    j["max_q"] = {{"center", report.max_q_center},
                  {"bulk", report.max_q_bulk},
                  {"edge", report.max_q_edge}};
    j["max_pair_residual"] = report.max_pair_residual;
    j["residual_pairs_checked"] = report.residual_pairs_checked;
    auto verdict_json = [](const VerdictRecord& v) {
        return nlohmann::ordered_json{{"max_q", v.max_q},
                                      {"bound", v.bound},
                                      {"pass", v.pass},
                                      {"vectors_considered", v.vectors_considered},
                                      {"zero_mode_in_window", v.zero_mode_in_window}};
    };
    j["verdict_everywhere"] = verdict_json(everywhere);
    j["verdict_bulk"] = verdict_json(bulk);
    write_file_atomic(run.out_dir / "report.json", j.dump(2) + "\n");
    run.add_output("report.json");
    run.finish();

    std::cout << "spectrum: max q everywhere " << format_float(everywhere.max_q) << " vs bound "
              << format_float(everywhere.bound) << " -> "
              << (everywhere.pass ? "pass" : "fail") << "\n";
    return 0;
}

// -------------------------------------------------------------- local-law ---

struct LocalLawArgs {
    SampleArgs base;
    std::optional<std::string> domain, target_im;
    std::optional<double> re, min_ratio, pass_constant, outlier_window;
    std::optional<std::uint64_t> grid_points, re_count, im_count;
    bool paper_grid = false;
    bool sweep = false;
};

int cmd_local_law(const LocalLawArgs& a) {
    Params p;
    if (!a.base.config_path.empty()) p.file = Config::load(a.base.config_path);
    check_manifest_command(p, "local-law");
    ModelConfig cfg = resolve_model_config(p, a.base);
    const std::string domain_s = p.resolve_string(a.domain, "domain", "lower");
    const bool paper = a.paper_grid || p.file.get("grid_mode").value_or("") == "paper";
    const bool sweep = a.sweep || p.file.get("mode").value_or("") == "sweep";

    const SparseHermitianModel model = sample_er_adjacency(cfg);
    const SpectralDomain domain = domain_s == "upper" ? SpectralDomain::upper(cfg.N, cfg.kappa)
                                                      : SpectralDomain::lower(cfg.N, cfg.kappa);

    RunContext run("local-law", a.base.out);
    record_model_config(run.manifest.config, cfg, "er");
    run.manifest.config.set("domain", domain_s);
    run.manifest.config.set("mode", sweep ? "sweep" : "trace");

    if (sweep) {
        const auto re_count = p.resolve_uint(a.re_count, "re_count", 9);
        const auto im_count = p.resolve_uint(a.im_count, "im_count", 4);
        const double pass_c = p.resolve_double(a.pass_constant, "pass_constant", 1.0);
        const double outw = p.resolve_double(a.outlier_window, "outlier_window", 0.5);
        run.manifest.config.set_uint("re_count", re_count);
        run.manifest.config.set_uint("im_count", im_count);
        run.manifest.config.set_double("pass_constant", pass_c);
        run.manifest.config.set_double("outlier_window", outw);

        std::vector<double> re_pts, im_pts;
        if (domain.tag == SpectralDomain::Tag::lower) {
            const double lo = -2.0 + domain.kappa, hi = 2.0 - domain.kappa;
            for (std::uint64_t i = 0; i < re_count; ++i)
                re_pts.push_back(re_count == 1 ? lo
                                               : lo + (hi - lo) * double(i) / double(re_count - 1));
        } else {
            for (std::uint64_t i = 0; i < re_count; ++i) {
                const double v = domain.kappa + (domain.re_cap - domain.kappa) * double(i) /
                                                    double(std::max<std::uint64_t>(re_count - 1, 1));
                re_pts.push_back(v);
                re_pts.push_back(-v);
            }
        }
        const double im_lo = domain.im_min();
        for (std::uint64_t i = 0; i < im_count; ++i)
            im_pts.push_back(im_count == 1
                                 ? 1.0
                                 : std::exp(std::log(im_lo) +
                                            (std::log(1.0) - std::log(im_lo)) * double(i) /
                                                double(im_count - 1)));
        const LocalLawReport report =
            local_law_report(model, domain, re_pts, im_pts, pass_c, outw);
        write_file_atomic(run.out_dir / "sweep.csv", report_to_csv(report));
        run.add_output("sweep.csv");
        write_file_atomic(run.out_dir / "resolvent.csv", report_resolvent_csv(report));
        run.add_output("resolvent.csv");
        run.finish();
        std::cout << "local-law sweep: " << report.rows.size() << " points, "
                  << (report.all_pass() ? "all pass" : "some points above threshold") << "\n";
        return 0;
    }

    const double re = p.resolve_double(a.re, "re", 0.5);
    const std::string target_s = p.resolve_string(a.target_im, "target_im", "auto");
    const double target_im = target_s == "auto" ? domain.im_min() : std::stod(target_s);
    GridSpec spec;
    spec.mode = paper ? GridSpec::Mode::paper : GridSpec::Mode::geometric;
    spec.points = static_cast<int>(p.resolve_uint(a.grid_points, "grid_points", 200));
    spec.min_ratio = p.resolve_double(a.min_ratio, "min_ratio", 0.5);
    run.manifest.config.set("grid_mode", paper ? "paper" : "geometric");
    run.manifest.config.set_double("re", re);
    run.manifest.config.set("target_im", format_float(target_im));
    run.manifest.config.set_uint("grid_points", spec.points);
    run.manifest.config.set_double("min_ratio", spec.min_ratio);

    const ContinuationTrace trace = bootstrap_run(model, domain, re, target_im, spec);
    write_file_atomic(run.out_dir / "trace.json", trace_to_json(trace, model) + "\n");
    run.add_output("trace.json");
    run.finish();

    std::cout << "local-law trace: " << trace.grid.size() << " grid points, K* index "
              << trace.k_star << ", verdict " << (trace.pass ? "pass" : "fail");
    if (!trace.conditioned) std::cout << " (unconditioned: psi_# = 0)";
    std::cout << "\n";
    return 0;
}

// ---------------------------------------------------------- phase-diagram ---

struct PhaseArgs {
    std::optional<std::uint64_t> N, trials, seed, threads;
    std::optional<double> kappa, kappa_test, delta_out;
    std::optional<std::string> b_grid, windows;
    std::string out = "speclab-out";
    std::string config_path;
};

int cmd_phase_diagram(const PhaseArgs& a) {
    Params p;
    if (!a.config_path.empty()) p.file = Config::load(a.config_path);
    check_manifest_command(p, "phase-diagram");
    const auto N = static_cast<std::uint32_t>(p.resolve_uint(a.N, "N", 1000));
    const auto trials = static_cast<std::uint32_t>(p.resolve_uint(a.trials, "trials", 20));
    const std::uint64_t seed = p.resolve_uint(a.seed, "seed", 1, "SPECLAB_SEED");
    const auto threads = p.resolve_uint(a.threads, "threads", 0, "SPECLAB_THREADS");
    const double kappa = p.resolve_double(a.kappa, "kappa", 0.1);
    const double kappa_test = p.resolve_double(a.kappa_test, "kappa_test", 0.3);
    const double delta_out = p.resolve_double(a.delta_out, "delta_out", 0.3);
    const std::vector<double> b_grid =
        parse_double_list(p.resolve_string(a.b_grid, "b_grid", "0.5,1.5,2.5,3.5"));
    const std::vector<EnergyWindow> windows =
        parse_windows(p.resolve_string(a.windows, "windows", "0:0.3,0.3:1.7,1.7:2,2:inf"));

    RunContext run("phase-diagram", a.out);
    auto& c = run.manifest.config;
    c.set_uint("N", N);
    c.set_uint("trials", trials);
    c.set_uint("seed", seed);
    c.set_uint("threads", threads);
    c.set_double("kappa", kappa);
    c.set_double("kappa_test", kappa_test);
    c.set_double("delta_out", delta_out);
    c.set("b_grid", doubles_to_string(b_grid));
    c.set("windows", windows_to_string(windows));

    const std::vector<PhaseCell> cells =
        phase_sweep(b_grid, windows, N, trials, kappa_test, seed, kappa, delta_out, threads);
    write_file_atomic(run.out_dir / "phase_diagram.csv", phase_cells_to_csv(cells));
    run.add_output("phase_diagram.csv");

    nlohmann::ordered_json j;
    for (const auto& [k, v] : c.entries()) j[k] = v;
    write_file_atomic(run.out_dir / "run_config.json", j.dump(2) + "\n");
    run.add_output("run_config.json");
    run.finish();
    std::cout << "phase diagram: " << cells.size() << " cells written\n";
    return 0;
}

// ----------------------------------------------------------- degree-tails ---

struct TailArgs {
    std::optional<std::uint64_t> N, trials, seed, threads;
    std::optional<double> b;
    std::optional<std::string> eps;
    std::string out = "speclab-out";
    std::string config_path;
};

int cmd_degree_tails(const TailArgs& a) {
    Params p;
    if (!a.config_path.empty()) p.file = Config::load(a.config_path);
    check_manifest_command(p, "degree-tails");
    const auto N = static_cast<std::uint32_t>(p.resolve_uint(a.N, "N", 2000));
    const auto trials = static_cast<std::uint32_t>(p.resolve_uint(a.trials, "trials", 1000));
    const std::uint64_t seed = p.resolve_uint(a.seed, "seed", 1, "SPECLAB_SEED");
    const auto threads = p.resolve_uint(a.threads, "threads", 0, "SPECLAB_THREADS");
    const double b = p.resolve_double(a.b, "b", 3.0);
    const std::vector<double> eps =
        parse_double_list(p.resolve_string(a.eps, "eps", "0.05,0.1"));

    ModelConfig cfg = ModelConfig::from_b(N, b, seed);
    if (cfg.d > std::sqrt(double(N)))
        throw std::runtime_error("degree tails require d <= sqrt(N)");

    RunContext run("degree-tails", a.out);
    auto& c = run.manifest.config;
    c.set_uint("N", N);
    c.set_double("b", b);
    c.set_uint("trials", trials);
    c.set_uint("seed", seed);
    c.set_uint("threads", threads);
    c.set("eps", doubles_to_string(eps));

    const ExtremesRaw raw = empirical_extremes(cfg, trials, threads);
    std::ostringstream csv;
    csv << "N,b,epsilon,bound_upper,bound_lower,emp_upper,emp_lower,ci_lo,ci_hi,trials\n";
    for (double e : eps) {
        const ExtremesSummary s = summarize_extremes(raw, e);
        // ci_lo / ci_hi: 95% Wilson upper confidence bounds of the lower- and
        // upper-tail frequencies respectively.
        csv << s.N << ',' << format_float(s.b) << ',' << format_float(s.epsilon) << ','
            << format_float(s.bound_upper) << ',' << format_float(s.bound_lower) << ','
            << format_float(s.freq_upper) << ',' << format_float(s.freq_lower) << ','
            << format_float(s.ci_lower.hi) << ',' << format_float(s.ci_upper.hi) << ','
            << s.trials << '\n';
    }
    write_file_atomic(run.out_dir / "degree_tails.csv", csv.str());
    run.add_output("degree_tails.csv");
    run.finish();
    std::cout << "degree tails: " << eps.size() << " epsilon rows over " << trials
              << " trials\n";
    return 0;
}

// -------------------------------------------------------------- stieltjes ---

struct StieltjesArgs {
    std::optional<double> re_min, re_max, im_min, im_max, eta_limit;
    std::optional<std::uint64_t> re_count, im_count;
    std::optional<std::string> alpha;
    std::string out = "speclab-out";
    std::string config_path;
};

int cmd_stieltjes(const StieltjesArgs& a) {
    Params p;
    if (!a.config_path.empty()) p.file = Config::load(a.config_path);
    check_manifest_command(p, "stieltjes");
    const double re_min = p.resolve_double(a.re_min, "re_min", -3.0);
    const double re_max = p.resolve_double(a.re_max, "re_max", 3.0);
    const auto re_count = p.resolve_uint(a.re_count, "re_count", 13);
    const double im_min = p.resolve_double(a.im_min, "im_min", 1e-4);
    const double im_max = p.resolve_double(a.im_max, "im_max", 1.0);
    const auto im_count = p.resolve_uint(a.im_count, "im_count", 5);
    const double eta_limit = p.resolve_double(a.eta_limit, "eta_limit", 1e-6);
    const std::vector<double> alphas =
        parse_double_list(p.resolve_string(a.alpha, "alpha", "0,0.5,1,2"));

    RunContext run("stieltjes", a.out);
    auto& c = run.manifest.config;
    c.set_double("re_min", re_min);
    c.set_double("re_max", re_max);
    c.set_uint("re_count", re_count);
    c.set_double("im_min", im_min);
    c.set_double("im_max", im_max);
    c.set_uint("im_count", im_count);
    c.set_double("eta_limit", eta_limit);
    c.set("alpha", doubles_to_string(alphas));

    std::ostringstream csv;
    csv << "re_z,im_z,m_re,m_im,m_tilde_re,m_tilde_im,gap,alpha,m_alpha_re,m_alpha_im,density\n";
    for (std::uint64_t i = 0; i < re_count; ++i) {
        const double re = re_count == 1
                              ? re_min
                              : re_min + (re_max - re_min) * double(i) / double(re_count - 1);
        for (std::uint64_t j = 0; j < im_count; ++j) {
            const double im =
                im_count == 1 ? im_min
                              : std::exp(std::log(im_min) + (std::log(im_max) - std::log(im_min)) *
                                                                double(j) / double(im_count - 1));
            const SpectralParam z{re, im};
            const TransformValue tv = eval_transforms(z);
            for (double alpha : alphas) {
                const Complex ma = eval_m_alpha(alpha, z);
                csv << format_float(re) << ',' << format_float(im) << ','
                    << format_float(tv.m.real()) << ',' << format_float(tv.m.imag()) << ','
                    << format_float(tv.m_tilde.real()) << ',' << format_float(tv.m_tilde.imag())
                    << ',' << format_float(tv.gap) << ',' << format_float(alpha) << ','
                    << format_float(ma.real()) << ',' << format_float(ma.imag()) << ','
                    << format_float(boundary_density(alpha, re, eta_limit)) << '\n';
            }
        }
    }
    write_file_atomic(run.out_dir / "stieltjes.csv", csv.str());
    run.add_output("stieltjes.csv");
    run.finish();
    std::cout << "stieltjes: " << re_count * im_count * alphas.size() << " rows\n";
    return 0;
}

void add_common_model_flags(CLI::App* sub, SampleArgs& a) {
    sub->add_option("--N", a.N, "matrix dimension");
    sub->add_option("--b", a.b, "sparseness b (d = b log N)");
    sub->add_option("--d", a.d, "mean degree (overrides --b)");
    sub->add_option("--kappa", a.kappa, "the constant kappa (default 0.1)");
    sub->add_option("--f", a.f, "rank-one strength for generic ensembles");
    sub->add_option("--entry-scale", a.entry_scale, "three-point law entry magnitude");
    sub->add_option("--seed", a.seed, "root seed (env SPECLAB_SEED)");
    sub->add_option("--dense-threshold", a.dense_threshold, "dense materialization cap");
    sub->add_option("--ensemble", a.ensemble,
                    "er | centered-bernoulli | symmetric-three-point");
    sub->add_option("--out", a.out, "output directory");
    sub->add_option("--config", a.config_path, "config or manifest file (flags win)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for critical Erdos-Renyi graphs"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "sample a model and write it out");
    add_common_model_flags(sample, sample_args);

    SpectrumArgs spec_args;
    auto* spectrum =
        app.add_subcommand("spectrum", "full eigendecomposition, q values and verdicts");
    add_common_model_flags(spectrum, spec_args.base);
    spectrum->add_option("--rescale", spec_args.rescale, "raw | by-sqrt-d");
    spectrum->add_option("--delta-out", spec_args.delta_out, "outlier threshold above 2");
    spectrum->add_option("--kappa-window", spec_args.kappa_window, "report window kappa");
    spectrum->add_option("--kappa-test", spec_args.kappa_test, "verdict exponent kappa");

    LocalLawArgs ll_args;
    auto* ll = app.add_subcommand("local-law", "bootstrap continuation trace or domain sweep");
    add_common_model_flags(ll, ll_args.base);
    ll->add_option("--domain", ll_args.domain, "lower | upper");
    ll->add_option("--re", ll_args.re, "Re z of the continuation path");
    ll->add_option("--target-im", ll_args.target_im, "target Im z, or 'auto' for N^{kappa-1}");
    ll->add_option("--grid-points", ll_args.grid_points, "geometric grid size");
    ll->add_option("--min-ratio", ll_args.min_ratio, "geometric step ratio floor");
    ll->add_flag("--paper-grid", ll_args.paper_grid, "arithmetic N^{-3} grid (N <= 100)");
    ll->add_flag("--sweep", ll_args.sweep, "2-D domain sweep instead of a trace");
    ll->add_option("--re-count", ll_args.re_count, "sweep: number of Re points");
    ll->add_option("--im-count", ll_args.im_count, "sweep: number of Im points");
    ll->add_option("--pass-constant", ll_args.pass_constant, "sweep: C in C (log N)^{-1/7}");
    ll->add_option("--outlier-window", ll_args.outlier_window,
                   "sweep: half-width of the Re band excluded around f + 1/f");

    PhaseArgs phase_args;
    auto* phase = app.add_subcommand("phase-diagram", "Monte Carlo (b, energy) sweep of max q");
    phase->add_option("--N", phase_args.N, "matrix dimension");
    phase->add_option("--b-grid", phase_args.b_grid, "comma list of b values");
    phase->add_option("--windows", phase_args.windows, "comma list of lo:hi windows on |lambda|");
    phase->add_option("--trials", phase_args.trials, "Monte Carlo trials per b");
    phase->add_option("--kappa", phase_args.kappa, "model kappa");
    phase->add_option("--kappa-test", phase_args.kappa_test, "verdict exponent");
    phase->add_option("--delta-out", phase_args.delta_out, "outlier threshold above 2");
    phase->add_option("--seed", phase_args.seed, "root seed (env SPECLAB_SEED)");
    phase->add_option("--threads", phase_args.threads, "worker threads (env SPECLAB_THREADS)");
    phase->add_option("--out", phase_args.out, "output directory");
    phase->add_option("--config", phase_args.config_path, "config or manifest file");

    TailArgs tail_args;
    auto* tails = app.add_subcommand("degree-tails", "tail bounds vs Monte Carlo extremes");
    tails->add_option("--N", tail_args.N, "graph size");
    tails->add_option("--b", tail_args.b, "sparseness b");
    tails->add_option("--eps", tail_args.eps, "comma list of epsilon values");
    tails->add_option("--trials", tail_args.trials, "Monte Carlo trials");
    tails->add_option("--seed", tail_args.seed, "root seed (env SPECLAB_SEED)");
    tails->add_option("--threads", tail_args.threads, "worker threads (env SPECLAB_THREADS)");
    tails->add_option("--out", tail_args.out, "output directory");
    tails->add_option("--config", tail_args.config_path, "config or manifest file");

    StieltjesArgs st_args;
    auto* st = app.add_subcommand("stieltjes", "tabulate m, m-tilde, m_alpha, gap, density");
    st->add_option("--re-min", st_args.re_min, "Re z grid start");
    st->add_option("--re-max", st_args.re_max, "Re z grid end");
    st->add_option("--re-count", st_args.re_count, "Re z grid size");
    st->add_option("--im-min", st_args.im_min, "Im z grid start (log spaced)");
    st->add_option("--im-max", st_args.im_max, "Im z grid end");
    st->add_option("--im-count", st_args.im_count, "Im z grid size");
    st->add_option("--alpha", st_args.alpha, "comma list of alpha values");
    st->add_option("--eta-limit", st_args.eta_limit, "eta for the boundary density");
    st->add_option("--out", st_args.out, "output directory");
    st->add_option("--config", st_args.config_path, "config or manifest file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) return cmd_sample(sample_args);
        if (spectrum->parsed()) return cmd_spectrum(spec_args);
        if (ll->parsed()) return cmd_local_law(ll_args);
        if (phase->parsed()) return cmd_phase_diagram(phase_args);
        if (tails->parsed()) return cmd_degree_tails(tail_args);
        if (st->parsed()) return cmd_stieltjes(st_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
