#include "ridgelab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ridgelab/diagnostics.hpp"
#include "ridgelab/error.hpp"
#include "ridgelab/io.hpp"
#include "ridgelab/pipeline.hpp"
#include "ridgelab/synth.hpp"

namespace ridgelab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigFlags {
    std::string config_file;
    PipelineConfig flags;
    std::string ridge_kind;
    double min_cycles = 0.0;
    std::vector<CLI::Option*> given;
    CLI::Option* beta = nullptr;
    CLI::Option* gamma = nullptr;
    CLI::Option* freq_min = nullptr;
    CLI::Option* freq_max = nullptr;
    CLI::Option* voices = nullptr;
    CLI::Option* kind = nullptr;
    CLI::Option* cycles = nullptr;
    CLI::Option* jump = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* truncation = nullptr;
    CLI::Option* threads = nullptr;
};

void add_config_options(CLI::App* app, ConfigFlags& c) {
    app->add_option("--config", c.config_file, "JSON configuration; flags override it");
    c.beta = app->add_option("--beta", c.flags.beta, "Morse beta");
    c.gamma = app->add_option("--gamma", c.flags.gamma, "Morse gamma");
    c.freq_min = app->add_option("--freq-min", c.flags.freq_min, "lowest frequency, rad/sample");
    c.freq_max = app->add_option("--freq-max", c.flags.freq_max, "highest frequency, rad/sample");
    c.voices = app->add_option("--voices", c.flags.voices_per_octave, "voices per octave");
    c.kind = app->add_option("--ridge-kind", c.ridge_kind, "amplitude or phase");
    c.cycles = app->add_option("--min-cycles", c.min_cycles, "shortest ridge kept, in cycles");
    c.jump = app->add_option("--max-jump", c.flags.max_jump, "chaining threshold, grid steps");
    c.alpha = app->add_option("--edge-alpha", c.flags.edge_alpha, "cone energy fraction");
    c.truncation =
        app->add_option("--truncation", c.flags.truncation, "stability truncation order N_T");
    c.threads = app->add_option("--threads", c.flags.threads, "worker threads (0: default)");
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

PipelineConfig resolve_config(const ConfigFlags& c) {
    PipelineConfig cfg;
    if (!c.config_file.empty()) {
        cfg = config_from_json(read_json_file(c.config_file));
    }
    if (c.beta->count()) cfg.beta = c.flags.beta;
    if (c.gamma->count()) cfg.gamma = c.flags.gamma;
    if (c.freq_min->count()) cfg.freq_min = c.flags.freq_min;
    if (c.freq_max->count()) cfg.freq_max = c.flags.freq_max;
    if (c.voices->count()) cfg.voices_per_octave = c.flags.voices_per_octave;
    if (c.kind->count()) cfg.ridge_kind = parse_ridge_kind(c.ridge_kind);
    if (c.cycles->count()) cfg.min_cycles = c.min_cycles;
    if (c.jump->count()) cfg.max_jump = c.flags.max_jump;
    if (c.alpha->count()) cfg.edge_alpha = c.flags.edge_alpha;
    if (c.truncation->count()) cfg.truncation = c.flags.truncation;
    if (c.threads->count()) cfg.threads = c.flags.threads;
    return cfg;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json wavelet_info(double beta, double gamma) {
    const MorseWavelet w(beta, gamma);
    json j;
    j["beta"] = beta;
    j["gamma"] = gamma;
    j["peak_frequency"] = w.peak_frequency();
    j["duration"] = w.duration();
    j["psi3_ratio"] = w.peak_derivative(3) / w.peak_derivative(2) + 0.0;  // no negative zero
    j["decay_rate"] = w.decay_rate();
    if (beta > 0.5) {
        j["time_spread"] = time_spread(w);
    } else {
        j["time_spread"] = "divergent";
    }
    return j;
}

json suitability_json(const SuitabilityVerdict& v) {
    json per = json::array();
    for (const auto& t : v.per_order) {
        per.push_back({{"order", t.order}, {"value", number_or_null(t.value)}, {"pass", t.pass}});
    }
    return {{"delta", v.delta},
            {"duration", v.duration},
            {"p_bound", number_or_null(v.p_bound)},
            {"duration_pass", v.duration_pass},
            {"per_order", per},
            {"overall", v.overall}};
}

json fidelity_json(const FidelityStatistics& f) {
    json j{{"success", f.success},
           {"samples", f.samples},
           {"mean_dev2", number_or_null(f.mean_dev2)},
           {"median_dev2", number_or_null(f.median_dev2)},
           {"ratio_samples", f.ratio_samples},
           {"mean_ratio", number_or_null(f.mean_ratio)},
           {"median_ratio", number_or_null(f.median_ratio)},
           {"config_hash", f.config_hash}};
    if (!f.message.empty()) {
        j["message"] = f.message;
    }
    return j;
}

std::size_t longest_estimate(const std::vector<RidgeEstimate>& estimates) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        if (estimates[i].time.size() > estimates[best].time.size()) {
            best = i;
        }
    }
    return best;
}

// Stability level of the recovered signal along each ridge; the largest wins.
std::optional<StabilityReport> estimated_stability(const std::vector<RidgeEstimate>& estimates,
                                                   double dt, int truncation) {
    std::optional<StabilityReport> worst;
    for (const auto& e : estimates) {
        if (e.x_hat.size() < 16) {
            continue;
        }
        try {
            const auto xa = instantaneous_moments(wrap_analytic(e.x_hat, dt), truncation);
            auto r = stability_level(xa, 0, xa.size(), truncation);
            if (!worst || r.delta > worst->delta) {
                worst = std::move(r);
            }
        } catch (const ArgumentError&) {
        }
    }
    return worst;
}

void add_rho2(CsvWriter& csv, const RidgeEstimate& e, std::size_t k) {
    if (e.rho2_valid[k]) {
        csv.field(e.rho2_hat[k].real()).field(e.rho2_hat[k].imag());
    } else {
        csv.field(std::string_view()).field(std::string_view());
    }
}

struct AnalyzeArgs {
    std::string input;
    std::string out_dir;
    std::string prefix;
    double dt = 1.0;
    bool raw = false;
    bool skip_fidelity = false;
    ConfigFlags config;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const PipelineConfig cfg = resolve_config(a.config);
    const Series series = read_series(a.input, a.dt);
    const double dt = series.dt;
    cfg.validate(dt);
    const PipelineResult r = run_pipeline(series.values, dt, cfg);
    const Scalogram& sg = r.analysis.scalogram();
    const std::size_t n = series.values.size();
    auto time_of = [&](std::size_t j) {
        return series.times.empty() ? static_cast<double>(j) * dt : series.times[j];
    };

    std::vector<std::string> header{"time"};
    for (std::size_t c = 0; c < sg.scales(); ++c) {
        header.push_back("abs_w" + std::to_string(c));
    }
    CsvWriter scalogram(header);
    for (std::size_t j = 0; j < sg.times(); ++j) {
        scalogram.field(time_of(j));
        for (std::size_t c = 0; c < sg.scales(); ++c) {
            scalogram.field(std::abs(sg.values(j, c)));
        }
        scalogram.end_row();
    }
    json margins = json::array();
    const std::optional<EnergyProfile> profile =
        sg.edge_alpha > 0.0 ? std::optional<EnergyProfile>(sg.wavelet) : std::nullopt;
    for (std::size_t c = 0; c < sg.scales(); ++c) {
        margins.push_back(sg.scale_ok(c) && profile
                              ? json(edge_margin(*profile, sg.edge_alpha, sg.grid.scales[c], dt))
                              : json(nullptr));
    }
    json sidecar{{"scales", sg.grid.scales},
                 {"dt", dt},
                 {"beta", cfg.beta},
                 {"gamma", cfg.gamma},
                 {"rows", sg.times()},
                 {"columns", sg.scales()},
                 {"edge_policy",
                  {{"padding", "symmetric reflection to the next power of two"},
                   {"cone_alpha", sg.edge_alpha},
                   {"margin_samples", margins}}}};
    json scale_errors = json::object();
    for (std::size_t c = 0; c < sg.scales(); ++c) {
        if (!sg.scale_ok(c)) {
            scale_errors[std::to_string(c)] = sg.scale_errors[c];
        }
    }
    sidecar["scale_errors"] = scale_errors;
    if (a.raw) {
        sidecar["raw"] = {{"file", a.prefix + "scalogram.bin"},
                          {"layout", "row-major time by scale, interleaved re im"},
                          {"encoding", "little-endian float64"}};
    }

    CsvWriter ridges({"time", "scale", "freq", "re_xhat", "im_xhat", "omega_hat", "upsilon_hat",
                      "re_rho2", "im_rho2", "kind", "curve_id"});
    CsvWriter estimate({"time", "re_xhat", "im_xhat", "a_hat", "phi_hat", "omega_hat",
                        "upsilon_hat", "re_rho2", "im_rho2", "curve_id"});
    std::vector<double> reconstruction(n, 0.0);
    for (std::size_t id = 0; id < r.estimates.size(); ++id) {
        const auto& e = r.estimates[id];
        const std::string kind = to_string(r.curves[id].kind);
        for (std::size_t k = 0; k < e.time.size(); ++k) {
            const double t = time_of(e.time_index[k]);
            ridges.field(t)
                .field(e.scale[k])
                .field(sg.wavelet.peak_frequency() / e.scale[k])
                .field(e.x_hat[k].real())
                .field(e.x_hat[k].imag())
                .field(e.omega_hat[k])
                .field(e.upsilon_hat[k]);
            add_rho2(ridges, e, k);
            ridges.field(std::string_view(kind)).field(static_cast<long long>(id));
            ridges.end_row();

            estimate.field(t)
                .field(e.x_hat[k].real())
                .field(e.x_hat[k].imag())
                .field(e.a_hat[k])
                .field(e.phi_hat[k])
                .field(e.omega_hat[k])
                .field(e.upsilon_hat[k]);
            add_rho2(estimate, e, k);
            estimate.field(static_cast<long long>(id));
            estimate.end_row();
            reconstruction[e.time_index[k]] += e.x_hat[k].real();
        }
    }
    CsvWriter residual({"time", "value", "residual"});
    for (std::size_t j = 0; j < n; ++j) {
        residual.field(time_of(j))
            .field(series.values[j])
            .field(series.values[j] - reconstruction[j])
            .end_row();
    }

    const MorseWavelet w = cfg.wavelet();
    json diag{{"config", to_json(cfg)},
              {"config_hash", config_hash_hex(cfg)},
              {"samples", n},
              {"dt", dt},
              {"wavelet", {{"beta", cfg.beta}, {"gamma", cfg.gamma}, {"P", w.duration()}}},
              {"ridges", r.estimates.size()},
              {"truncation", cfg.truncation}};
    const auto stability = estimated_stability(r.estimates, dt, cfg.truncation);
    if (stability && stability->delta > 0.0) {
        diag["delta"] = stability->delta;
        diag["stability_per_order"] = stability->per_order;
        diag["suitability"] = suitability_json(check_suitability(w, stability->delta));
    } else {
        diag["delta"] = nullptr;
        diag["suitability"] = nullptr;
    }
    if (r.estimates.empty() || a.skip_fidelity) {
        diag["fidelity"] = nullptr;
    } else {
        const auto& e = r.estimates[longest_estimate(r.estimates)];
        diag["fidelity"] = fidelity_json(iterated_fidelity(e, dt, cfg));
    }

    const fs::path dir(a.out_dir);
    if (!fs::is_directory(dir)) {
        throw IoError("output directory does not exist: " + a.out_dir);
    }
    OutputSet files;
    files.add(dir / (a.prefix + "scalogram.csv"), scalogram.text());
    files.add(dir / (a.prefix + "scalogram.json"), sidecar.dump(2) + "\n");
    if (a.raw) {
        files.add(dir / (a.prefix + "scalogram.bin"), complex_to_bytes(sg.values.data));
    }
    files.add(dir / (a.prefix + "ridges.csv"), ridges.text());
    files.add(dir / (a.prefix + "estimate.csv"), estimate.text());
    files.add(dir / (a.prefix + "residual.csv"), residual.text());
    files.add(dir / (a.prefix + "diagnostics.json"), diag.dump(2) + "\n");
    files.commit();

    out << r.estimates.size() << " ridge" << (r.estimates.size() == 1 ? "" : "s") << " found\n";
    return r.estimates.empty() ? exit_no_ridge : exit_ok;
}

struct SynthArgs {
    std::string kind;
    std::size_t n = 1024;
    double dt = 1.0;
    double amplitude = 1.0;
    double omega0 = 2.0 * std::numbers::pi / 32.0;
    double phase = 0.0;
    double m = 0.05;
    std::optional<double> omega1;
    std::optional<double> q;
    std::optional<double> width;
    std::string output;
    std::string truth;
};

int cmd_synthesize(const SynthArgs& a, std::ostream& out) {
    SyntheticSignal s;
    if (a.kind == "tone") {
        s = make_tone(a.n, a.dt, a.amplitude, a.omega0, a.phase);
    } else if (a.kind == "fm") {
        s = make_fm(a.n, a.dt, a.amplitude, a.omega0, a.m, a.omega1.value_or(a.omega0 / 16.0));
    } else if (a.kind == "chirp") {
        if (!a.q) {
            throw ArgumentError("chirp needs --q");
        }
        s = make_chirp(a.n, a.dt, a.amplitude, a.omega0, *a.q);
    } else {
        const double width = a.width.value_or(static_cast<double>(a.n) * a.dt / 8.0);
        s = make_gaussian_envelope(a.n, a.dt, a.amplitude, a.omega0, width);
    }
    CsvWriter signal({"time", "value"});
    for (std::size_t j = 0; j < s.x.size(); ++j) {
        signal.field(s.time(j)).field(s.x[j]).end_row();
    }
    OutputSet files;
    if (!a.truth.empty()) {
        CsvWriter truth({"time", "re_x", "im_x", "omega", "upsilon", "re_rho2", "im_rho2"});
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            truth.field(s.time(j))
                .field(s.analytic[j].real())
                .field(s.analytic[j].imag())
                .field(s.omega[j])
                .field(s.upsilon[j])
                .field(s.rho2[j].real())
                .field(s.rho2[j].imag())
                .end_row();
        }
        files.add(a.truth, truth.text());
    }
    if (a.output.empty() || a.output == "-") {
        files.commit();
        out << signal.text();
    } else {
        files.add(a.output, signal.text());
        files.commit();
    }
    return exit_ok;
}

struct FidelityArgs {
    std::string input;
    double dt = 1.0;
    ConfigFlags config;
};

int cmd_fidelity(const FidelityArgs& a, std::ostream& out) {
    const PipelineConfig cfg = resolve_config(a.config);
    const Series series = read_series(a.input, a.dt);
    cfg.validate(series.dt);
    const auto r = run_pipeline(series.values, series.dt, cfg);
    json report{{"config_hash", config_hash_hex(cfg)},
                {"wavelet",
                 {{"beta", cfg.beta}, {"gamma", cfg.gamma}, {"P", cfg.wavelet().duration()}}},
                {"ridges", r.estimates.size()}};
    if (r.estimates.empty()) {
        report["fidelity"] = nullptr;
        out << report.dump(2) << "\n";
        return exit_no_ridge;
    }
    const auto f = iterated_fidelity(r.estimates[longest_estimate(r.estimates)], series.dt, cfg);
    report["fidelity"] = fidelity_json(f);
    out << report.dump(2) << "\n";
    return f.success ? exit_ok : exit_no_ridge;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Analytic wavelet ridge analysis", "ridgelab"};
    app.require_subcommand(1);

    double info_beta = 3.0;
    double info_gamma = 3.0;
    auto* info = app.add_subcommand("wavelet-info", "Closed-form Morse wavelet properties (JSON)");
    info->add_option("--beta", info_beta, "Morse beta")->required();
    info->add_option("--gamma", info_gamma, "Morse gamma")->required();

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Transform, ridges, estimates and diagnostics");
    analyze->add_option("input", an.input, "CSV: one value column or (time, value)")->required();
    analyze->add_option("-o,--out-dir", an.out_dir, "output directory")->required();
    analyze->add_option("--prefix", an.prefix, "prefix for output file names");
    analyze->add_option("--dt", an.dt, "sample interval for single-column input");
    analyze->add_flag("--raw", an.raw, "also write the complex scalogram as raw float64");
    analyze->add_flag("--no-fidelity", an.skip_fidelity, "skip the iterated fidelity rerun");
    add_config_options(analyze, an.config);

    SynthArgs sy;
    auto* synth = app.add_subcommand("synthesize", "Deterministic test signal with ground truth");
    synth->add_option("kind", sy.kind, "tone, fm, chirp or gaussian-envelope")
        ->required()
        ->check(CLI::IsMember({"tone", "fm", "chirp", "gaussian-envelope"}));
    synth->add_option("-n,--samples", sy.n, "number of samples");
    synth->add_option("--dt", sy.dt, "sample interval");
    synth->add_option("--amplitude", sy.amplitude, "amplitude");
    synth->add_option("--omega0", sy.omega0, "carrier frequency, rad per unit time");
    synth->add_option("--phase", sy.phase, "tone phase, rad");
    synth->add_option("--m", sy.m, "fm modulation depth");
    synth->add_option("--omega1", sy.omega1, "fm modulation frequency (default omega0/16)");
    synth->add_option("--q", sy.q, "chirp rate, rad per unit time squared");
    synth->add_option("--width", sy.width, "gaussian envelope width (default n dt / 8)");
    synth->add_option("-o,--output", sy.output, "signal CSV (default stdout)");
    synth->add_option("--truth", sy.truth, "ground-truth CSV");

    double su_beta = 3.0;
    double su_gamma = 3.0;
    double su_delta = 0.0;
    int su_order = kDefaultSuitabilityOrder;
    auto* suit = app.add_subcommand("suitability", "Wavelet suitability for a stability level");
    suit->add_option("--beta", su_beta, "Morse beta")->required();
    suit->add_option("--gamma", su_gamma, "Morse gamma")->required();
    suit->add_option("--delta", su_delta, "stability level")->required();
    suit->add_option("--max-order", su_order, "highest derivative order checked");

    FidelityArgs fi;
    auto* fid = app.add_subcommand("fidelity", "Iterated fidelity statistics (JSON)");
    fid->add_option("input", fi.input, "CSV: one value column or (time, value)")->required();
    fid->add_option("--dt", fi.dt, "sample interval for single-column input");
    add_config_options(fid, fi.config);

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_invalid;
    }

    try {
        if (*info) {
            out << wavelet_info(info_beta, info_gamma).dump(2) << "\n";
            return exit_ok;
        }
        if (*analyze) {
            return cmd_analyze(an, out);
        }
        if (*synth) {
            return cmd_synthesize(sy, out);
        }
        if (*suit) {
            const auto v = check_suitability(MorseWavelet(su_beta, su_gamma), su_delta, su_order);
            json j = suitability_json(v);
            j["beta"] = su_beta;
            j["gamma"] = su_gamma;
            out << j.dump(2) << "\n";
            return exit_ok;
        }
        return cmd_fidelity(fi, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    }
}

}  // namespace ridgelab::cli
