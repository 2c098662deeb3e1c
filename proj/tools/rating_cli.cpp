// ratekit: online rating experiments from the command line.
//
// Subcommands: simulate (synthetic Monte Carlo), rate (skill trajectories),
// evaluate (log-score report), estimate-params (frequency estimators), and
// scan (hyperparameter grid search). Every run writes a flat key=value
// manifest that can be fed back through --config to reproduce the outputs
// byte for byte.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ratekit/csvio.hpp"
#include "ratekit/engine_spec.hpp"
#include "ratekit/engines.hpp"
#include "ratekit/evaluation.hpp"
#include "ratekit/ingest.hpp"
#include "ratekit/synthetic.hpp"

namespace fs = std::filesystem;
using namespace ratekit;

namespace {

constexpr const char* kVersion = "0.1.0";

unsigned resolve_threads(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("RATEKIT_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0) return static_cast<unsigned>(parsed);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string hex64(std::uint64_t value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

using ManifestEntries = std::vector<std::pair<std::string, std::string>>;

void add_input_digests(ManifestEntries& entries, const std::vector<std::string>& paths) {
    for (const auto& p : paths) {
        entries.emplace_back("# input " + p + " fnv1a64=" + hex64(fnv1a64_file(p)), "");
    }
}

std::string quote_list(const std::vector<std::string>& items) {
    // CLI11 config array form: ["a", "b"].
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += '"';
        out += items[i];
        out += '"';
    }
    out += ']';
    return out;
}

OutcomeMode mode_from_flag(const std::string& name) {
    const auto mode = parse_outcome_mode(name);
    if (!mode) throw std::invalid_argument("unknown outcome mode '" + name + "'");
    return *mode;
}

// Per-game log-scores of one engine over one parsed season.
std::vector<double> season_log_scores(const SeasonData& season, const EngineConfig& cfg) {
    RatingState state = init(cfg, season.team_count());
    std::vector<double> scores;
    scores.reserve(season.game_count());
    for (const auto& game : season.games) {
        scores.push_back(log_score(cfg.model, predict_z(state, game, cfg), game.outcome));
        step_inplace(state, game, cfg);
    }
    return scores;
}

struct WindowAverages {
    double ls_init = 0.0;
    double ls_final = 0.0;
};

WindowAverages averaged_windows(const std::vector<SeasonData>& seasons, const EngineConfig& cfg) {
    WindowAverages avg;
    for (const auto& season : seasons) {
        const auto w = score_windows(season_log_scores(season, cfg), season.team_count());
        avg.ls_init += w.ls_init;
        avg.ls_final += w.ls_final;
    }
    avg.ls_init /= static_cast<double>(seasons.size());
    avg.ls_final /= static_cast<double>(seasons.size());
    return avg;
}

void check_model_mode(const EngineConfig& cfg, OutcomeMode mode) {
    const bool ternary_model = cfg.model.kind == ModelKind::Davidson;
    const bool ternary_mode = outcome_mode_alphabet(mode) == 3;
    if (ternary_model != ternary_mode) {
        throw std::invalid_argument(std::string("model '") + model_kind_name(cfg.model.kind) +
                                    "' does not match outcome mode '" + outcome_mode_name(mode) +
                                    "'");
    }
}

OutcomeFrequencies pooled_frequencies(const std::vector<SeasonData>& seasons, OutcomeMode mode) {
    std::vector<GameRecord> all;
    for (const auto& s : seasons) all.insert(all.end(), s.games.begin(), s.games.end());
    return count_frequencies(all, outcome_mode_alphabet(mode));
}

// ---- simulate ----

struct SimulateArgs {
    SyntheticConfig synth;
    std::int64_t switch_day = -1;
    double epsilon_hat = -1.0;
    std::vector<std::string> engine_specs;
    std::string metric = "kl";
    std::string out_dir = ".";
    unsigned threads = 0;
};

int run_simulate(const SimulateArgs& args) {
    SyntheticConfig synth = args.synth;
    if (args.epsilon_hat >= 0.0) synth.epsilon_hat = args.epsilon_hat;
    if (args.switch_day >= 0) synth.switch_day = args.switch_day;
    synth.validate();

    if (args.metric != "kl" && args.metric != "logscore") {
        throw std::invalid_argument("metric must be kl or logscore");
    }
    const MetricKind metric =
        args.metric == "kl" ? MetricKind::KLDivergence : MetricKind::LogScore;

    EngineSpecDefaults defaults;
    defaults.scale_s = synth.sigma_obs;
    std::vector<EngineConfig> configs;
    std::vector<std::string> labels;
    for (const auto& text : args.engine_specs) {
        auto spec = parse_engine_spec(text, defaults);
        std::string label = spec.label;
        for (int suffix = 2; std::find(labels.begin(), labels.end(), label) != labels.end();
             ++suffix) {
            label = spec.label + "-" + std::to_string(suffix);
        }
        labels.push_back(label);
        configs.push_back(std::move(spec.config));
    }

    const auto result = run_experiment(synth, configs, metric, resolve_threads(args.threads));

    fs::create_directories(args.out_dir);
    for (std::size_t e = 0; e < configs.size(); ++e) {
        std::string csv = "day,mean,median,q3,n\n";
        for (std::size_t d = 0; d < synth.days; ++d) {
            const auto& stats = result.per_engine[e][d];
            csv += std::to_string(d + 1) + ',' + format_double(stats.mean) + ',' +
                   format_double(stats.median) + ',' + format_double(stats.q3) + ',' +
                   std::to_string(stats.count) + '\n';
        }
        write_text_file(fs::path(args.out_dir) / (labels[e] + ".csv"), csv);
    }

    ManifestEntries manifest;
    manifest.emplace_back("# ratekit " + std::string(kVersion) + " simulate manifest", "");
    manifest.emplace_back("# reproduce with: ratekit --config <this file> simulate", "");
    manifest.emplace_back("[simulate]", "");
    manifest.emplace_back("M", std::to_string(synth.players));
    manifest.emplace_back("D", std::to_string(synth.days));
    manifest.emplace_back("replicates", std::to_string(synth.replicates));
    manifest.emplace_back("sigma", format_double(synth.sigma_obs));
    manifest.emplace_back("beta-hat", format_double(synth.beta_hat));
    manifest.emplace_back("epsilon-hat", format_double(synth.effective_epsilon_hat()));
    if (synth.switch_day) {
        manifest.emplace_back("switch-day", std::to_string(*synth.switch_day));
        manifest.emplace_back("switch-count", std::to_string(synth.switch_count));
    }
    manifest.emplace_back("seed", std::to_string(synth.seed));
    manifest.emplace_back("metric", args.metric);
    manifest.emplace_back("out-dir", args.out_dir);
    manifest.emplace_back("engines", quote_list(args.engine_specs));
    for (std::size_t e = 0; e < configs.size(); ++e) {
        manifest.emplace_back("# engine " + labels[e] + " = " + engine_spec_string(configs[e]),
                              "");
        manifest.emplace_back("# output " + labels[e] + ".csv", "");
    }
    write_manifest(fs::path(args.out_dir) / "manifest.txt", manifest);
    return 0;
}

// ---- rate ----

struct RateArgs {
    std::string data;
    std::string mode = "binary_final";
    std::string engine_spec;
    std::string out;
    std::string covariance_out;
    std::string teams_out;
};

int run_rate(const RateArgs& args) {
    const OutcomeMode mode = mode_from_flag(args.mode);
    const auto spec = parse_engine_spec(args.engine_spec);
    check_model_mode(spec.config, mode);
    const SeasonData season = parse_season(args.data, mode);

    RatingState state = init(spec.config, season.team_count());
    std::string csv = "t,tau,player_id,mu,variance\n";
    for (const auto& game : season.games) {
        step_inplace(state, game, spec.config);
        for (std::size_t m = 0; m < season.team_count(); ++m) {
            csv += std::to_string(game.t_index) + ',' + std::to_string(game.tau) + ',' +
                   std::to_string(m) + ',' + format_double(state.mu[m]) + ',';
            if (const auto var = state.variance_of(m)) csv += format_double(*var);
            csv += '\n';
        }
    }
    write_text_file(args.out, csv);

    if (!args.covariance_out.empty()) {
        std::string cov_csv;
        if (const auto* full = std::get_if<Matrix>(&state.cov)) {
            for (std::size_t j = 0; j < full->size(); ++j) {
                if (j) cov_csv += ',';
                cov_csv += "p" + std::to_string(j);
            }
            cov_csv += '\n';
            for (std::size_t i = 0; i < full->size(); ++i) {
                for (std::size_t j = 0; j < full->size(); ++j) {
                    if (j) cov_csv += ',';
                    cov_csv += format_double((*full)(i, j));
                }
                cov_csv += '\n';
            }
        } else {
            cov_csv = "player_id,variance\n";
            for (std::size_t m = 0; m < season.team_count(); ++m) {
                cov_csv += std::to_string(m) + ',';
                if (const auto var = state.variance_of(m)) cov_csv += format_double(*var);
                cov_csv += '\n';
            }
        }
        write_text_file(args.covariance_out, cov_csv);
    }

    if (!args.teams_out.empty()) {
        std::string teams_csv = "player_id,team\n";
        for (std::size_t m = 0; m < season.team_count(); ++m) {
            teams_csv += std::to_string(m) + ',' + season.team_names[m] + '\n';
        }
        write_text_file(args.teams_out, teams_csv);
    }

    ManifestEntries manifest;
    manifest.emplace_back("# ratekit " + std::string(kVersion) + " rate manifest", "");
    manifest.emplace_back("# reproduce with: ratekit --config <this file> rate", "");
    manifest.emplace_back("[rate]", "");
    manifest.emplace_back("data", args.data);
    manifest.emplace_back("mode", args.mode);
    manifest.emplace_back("engine", args.engine_spec);
    manifest.emplace_back("out", args.out);
    if (!args.covariance_out.empty()) {
        manifest.emplace_back("export-covariance", args.covariance_out);
    }
    if (!args.teams_out.empty()) manifest.emplace_back("teams-out", args.teams_out);
    add_input_digests(manifest, {args.data});
    write_manifest(args.out + ".manifest", manifest);
    return 0;
}

// ---- evaluate ----

struct EvaluateArgs {
    std::vector<std::string> data;
    std::string mode = "binary_final";
    std::vector<std::string> engine_specs;
    std::string league;
    std::string out;
};

int run_evaluate(const EvaluateArgs& args) {
    const OutcomeMode mode = mode_from_flag(args.mode);
    std::vector<SeasonData> seasons;
    seasons.reserve(args.data.size());
    for (const auto& path : args.data) seasons.push_back(parse_season(path, mode));

    const std::string league =
        args.league.empty() ? fs::path(args.data.front()).stem().string() : args.league;
    const double h = entropy(pooled_frequencies(seasons, mode));

    std::string csv = "league,model,algorithm,params,ls_init,ls_final,entropy\n";
    for (const auto& text : args.engine_specs) {
        const auto spec = parse_engine_spec(text);
        check_model_mode(spec.config, mode);
        const auto avg = averaged_windows(seasons, spec.config);
        csv += league + ',' + model_kind_name(spec.config.model.kind) + ',' +
               algorithm_name(spec.config.algorithm) + ',' + engine_spec_string(spec.config) +
               ',' + format_double(avg.ls_init) + ',' + format_double(avg.ls_final) + ',' +
               format_double(h) + '\n';
    }
    write_text_file(args.out, csv);

    ManifestEntries manifest;
    manifest.emplace_back("# ratekit " + std::string(kVersion) + " evaluate manifest", "");
    manifest.emplace_back("# reproduce with: ratekit --config <this file> evaluate", "");
    manifest.emplace_back("[evaluate]", "");
    manifest.emplace_back("data", quote_list(args.data));
    manifest.emplace_back("mode", args.mode);
    manifest.emplace_back("league", league);
    manifest.emplace_back("engines", quote_list(args.engine_specs));
    manifest.emplace_back("out", args.out);
    add_input_digests(manifest, args.data);
    write_manifest(args.out + ".manifest", manifest);
    return 0;
}

// ---- estimate-params ----

struct EstimateArgs {
    std::vector<std::string> data;
    std::string mode = "ternary_final";
    std::string out;
};

int run_estimate(const EstimateArgs& args) {
    const OutcomeMode mode = mode_from_flag(args.mode);
    std::vector<SeasonData> seasons;
    for (const auto& path : args.data) seasons.push_back(parse_season(path, mode));
    const auto freqs = pooled_frequencies(seasons, mode);
    const double h = entropy(freqs);

    std::string csv;
    if (outcome_mode_alphabet(mode) == 2) {
        const double eta = estimate_hfa_binary(freqs);
        csv = "mode,f0,f1,eta,entropy\n" + std::string(outcome_mode_name(mode)) + ',' +
              format_double(freqs.f[0]) + ',' + format_double(freqs.f[1]) + ',' +
              format_double(eta) + ',' + format_double(h) + '\n';
        std::cout << "f0=" << format_double(freqs.f[0]) << " f1=" << format_double(freqs.f[1])
                  << " eta=" << format_double(eta) << " H=" << format_double(h) << '\n';
    } else {
        const auto params = estimate_davidson_params(freqs);
        csv = "mode,f0,f1,f2,eta,kappa,entropy\n" + std::string(outcome_mode_name(mode)) + ',' +
              format_double(freqs.f[0]) + ',' + format_double(freqs.f[1]) + ',' +
              format_double(freqs.f[2]) + ',' + format_double(params.eta) + ',' +
              format_double(params.kappa) + ',' + format_double(h) + '\n';
        std::cout << "f0=" << format_double(freqs.f[0]) << " f1=" << format_double(freqs.f[1])
                  << " f2=" << format_double(freqs.f[2]) << " eta=" << format_double(params.eta)
                  << " kappa=" << format_double(params.kappa) << " H=" << format_double(h)
                  << '\n';
    }
    if (!args.out.empty()) {
        write_text_file(args.out, csv);
        ManifestEntries manifest;
        manifest.emplace_back(
            "# ratekit " + std::string(kVersion) + " estimate-params manifest", "");
        manifest.emplace_back("# reproduce with: ratekit --config <this file> estimate-params", "");
        manifest.emplace_back("[estimate-params]", "");
        manifest.emplace_back("data", quote_list(args.data));
        manifest.emplace_back("mode", args.mode);
        manifest.emplace_back("out", args.out);
        add_input_digests(manifest, args.data);
        write_manifest(args.out + ".manifest", manifest);
    }
    return 0;
}

// ---- scan ----

struct ScanArgs {
    std::vector<std::string> data;
    std::string mode = "binary_final";
    std::string engine_spec;
    std::vector<double> grid_v0;
    std::vector<double> grid_eps;
    std::vector<double> grid_K;
    std::vector<double> grid_vbar;
    std::string out;
    unsigned threads = 0;
};

int run_scan(const ScanArgs& args) {
    const OutcomeMode mode = mode_from_flag(args.mode);
    const auto base = parse_engine_spec(args.engine_spec);
    check_model_mode(base.config, mode);

    struct GridAxis {
        std::string name;
        std::vector<double> values;
    };
    std::vector<GridAxis> axes;
    if (!args.grid_v0.empty()) axes.push_back({"v0", args.grid_v0});
    if (!args.grid_eps.empty()) axes.push_back({"eps", args.grid_eps});
    if (!args.grid_K.empty()) axes.push_back({"K", args.grid_K});
    if (!args.grid_vbar.empty()) axes.push_back({"vbar", args.grid_vbar});
    if (axes.empty()) throw std::invalid_argument("scan needs at least one --grid-* axis");

    std::vector<SeasonData> seasons;
    for (const auto& path : args.data) seasons.push_back(parse_season(path, mode));

    std::size_t n_cells = 1;
    for (const auto& axis : axes) n_cells *= axis.values.size();

    // Cell -> config, row-major product order over the axes.
    std::vector<EngineConfig> cells(n_cells, base.config);
    std::vector<std::vector<double>> cell_values(n_cells,
                                                 std::vector<double>(axes.size(), 0.0));
    for (std::size_t c = 0; c < n_cells; ++c) {
        std::size_t rest = c;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const double value = axes[a].values[rest % axes[a].values.size()];
            rest /= axes[a].values.size();
            cell_values[c][a] = value;
            if (axes[a].name == "v0") cells[c].v0 = value;
            if (axes[a].name == "eps") cells[c].dynamics.epsilon = value;
            if (axes[a].name == "K") cells[c].step_K = value;
            if (axes[a].name == "vbar") cells[c].v_bar = value;
        }
        cells[c].validate();
    }

    std::vector<WindowAverages> results(n_cells);
    const unsigned n_threads =
        std::min<unsigned>(resolve_threads(args.threads), static_cast<unsigned>(n_cells));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_cells || failed.load()) return;
            try {
                results[c] = averaged_windows(seasons, cells[c]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::string csv;
    for (const auto& axis : axes) {
        csv += axis.name;
        csv += ',';
    }
    csv += "ls_init,ls_final\n";
    for (std::size_t c = 0; c < n_cells; ++c) {
        for (double value : cell_values[c]) {
            csv += format_double(value);
            csv += ',';
        }
        csv += format_double(results[c].ls_init) + ',' + format_double(results[c].ls_final) + '\n';
    }
    write_text_file(args.out, csv);

    ManifestEntries manifest;
    manifest.emplace_back("# ratekit " + std::string(kVersion) + " scan manifest", "");
    manifest.emplace_back("# reproduce with: ratekit --config <this file> scan", "");
    manifest.emplace_back("[scan]", "");
    manifest.emplace_back("data", quote_list(args.data));
    manifest.emplace_back("mode", args.mode);
    manifest.emplace_back("engine", args.engine_spec);
    for (const auto& axis : axes) {
        std::string values = "[";
        for (std::size_t i = 0; i < axis.values.size(); ++i) {
            if (i) values += ", ";
            values += format_double(axis.values[i]);
        }
        values += ']';
        manifest.emplace_back("grid-" + axis.name, values);
    }
    manifest.emplace_back("out", args.out);
    add_input_digests(manifest, args.data);
    write_manifest(args.out + ".manifest", manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online Bayesian rating toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "manifest/config file with flag values (section per subcommand)");
    app.allow_config_extras(true);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "synthetic Monte Carlo experiment");
    simulate->add_option("--M", sim.synth.players, "players")->capture_default_str();
    simulate->add_option("--D", sim.synth.days, "days")->capture_default_str();
    simulate->add_option("--replicates", sim.synth.replicates, "Monte Carlo replicates")
        ->capture_default_str();
    simulate->add_option("--sigma", sim.synth.sigma_obs, "outcome noise scale")
        ->capture_default_str();
    simulate->add_option("--beta-hat", sim.synth.beta_hat, "skill damping per day")
        ->capture_default_str();
    simulate->add_option("--epsilon-hat", sim.epsilon_hat,
                         "walk increment variance (default 1 - beta_hat^2)");
    simulate->add_option("--switch-day", sim.switch_day, "day from which fresh players appear");
    simulate->add_option("--switch-count", sim.synth.switch_count, "players replaced")
        ->capture_default_str();
    simulate->add_option("--seed", sim.synth.seed, "master seed")->capture_default_str();
    simulate->add_option("--metric", sim.metric, "kl or logscore")->capture_default_str();
    simulate->add_option("--engines", sim.engine_specs, "engine specs (name:key=val,...)")
        ->required()
        ->expected(-1);
    simulate->add_option("--out-dir", sim.out_dir, "output directory")->capture_default_str();
    simulate->add_option("--threads", sim.threads, "worker threads (0 = auto)");

    RateArgs rate;
    auto* rate_cmd = app.add_subcommand("rate", "skill trajectories over a season file");
    rate_cmd->add_option("--data", rate.data, "season CSV")->required();
    rate_cmd->add_option("--mode", rate.mode, "binary_final | ternary_regulation | ternary_final")
        ->capture_default_str();
    rate_cmd->add_option("--engine", rate.engine_spec, "engine spec")->required();
    rate_cmd->add_option("--out", rate.out, "trajectory CSV")->required();
    rate_cmd->add_option("--export-covariance", rate.covariance_out,
                         "write the final covariance (dense for kf)");
    rate_cmd->add_option("--teams-out", rate.teams_out, "write the player-id/team map");

    EvaluateArgs eval;
    auto* eval_cmd = app.add_subcommand("evaluate", "log-score report over seasons");
    eval_cmd->add_option("--data", eval.data, "season CSVs")->required()->expected(-1);
    eval_cmd->add_option("--mode", eval.mode, "outcome mode")->capture_default_str();
    eval_cmd->add_option("--engines", eval.engine_specs, "engine specs")->required()->expected(-1);
    eval_cmd->add_option("--league", eval.league, "league label (default: first file stem)");
    eval_cmd->add_option("--out", eval.out, "report CSV")->required();

    EstimateArgs est;
    auto* est_cmd = app.add_subcommand("estimate-params", "home-boost / draw estimators");
    est_cmd->add_option("--data", est.data, "season CSVs")->required()->expected(-1);
    est_cmd->add_option("--mode", est.mode, "outcome mode")->capture_default_str();
    est_cmd->add_option("--out", est.out, "report CSV (optional)");

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "grid search over engine hyperparameters");
    scan_cmd->add_option("--data", scan.data, "season CSVs")->required()->expected(-1);
    scan_cmd->add_option("--mode", scan.mode, "outcome mode")->capture_default_str();
    scan_cmd->add_option("--engine", scan.engine_spec, "base engine spec")->required();
    scan_cmd->add_option("--grid-v0", scan.grid_v0, "v0 grid values");
    scan_cmd->add_option("--grid-eps", scan.grid_eps, "epsilon grid values");
    scan_cmd->add_option("--grid-K", scan.grid_K, "K grid values");
    scan_cmd->add_option("--grid-vbar", scan.grid_vbar, "vbar grid values");
    scan_cmd->add_option("--out", scan.out, "grid CSV")->required();
    scan_cmd->add_option("--threads", scan.threads, "worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (rate_cmd->parsed()) return run_rate(rate);
        if (eval_cmd->parsed()) return run_evaluate(eval);
        if (est_cmd->parsed()) return run_estimate(est);
        if (scan_cmd->parsed()) return run_scan(scan);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
