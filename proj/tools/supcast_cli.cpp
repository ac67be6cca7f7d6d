// Command-line surface: scenario JSON in, CSV/JSON reports out.
// Exit codes: 0 success, 1 validation failure, 2 runtime/numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "supcast/dgp.hpp"
#include "supcast/io.hpp"
#include "supcast/montecarlo.hpp"

namespace {

using namespace supcast;

ScenarioConfig load_validated(const std::string& path, std::optional<std::uint64_t> seed) {
    ScenarioConfig config = load_scenario(path);
    if (seed) config.seed = *seed;
    const auto errors = validate_scenario(config);
    if (!errors.empty()) {
        std::ostringstream msg;
        msg << "invalid scenario config:";
        for (const auto& e : errors) msg << "\n  " << e;
        throw std::invalid_argument(msg.str());
    }
    return config;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << content;
}

template <typename Fn>
void write_csv_file(const std::string& path, Fn&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    writer(out);
}

NoiseSpec parse_noise_flag(const std::string& flag) {
    const auto colon = flag.find(':');
    const std::string kind = flag.substr(0, colon);
    NoiseSpec spec;
    if (kind == "none") {
        spec.kind = NoiseKind::none;
    } else if (kind == "additive") {
        spec.kind = NoiseKind::additive;
    } else if (kind == "multiplicative") {
        spec.kind = NoiseKind::multiplicative;
    } else {
        throw std::invalid_argument("unknown noise kind '" + kind + "'");
    }
    if (colon != std::string::npos) spec.sd = std::stod(flag.substr(colon + 1));
    if (spec.sd < 0) throw std::invalid_argument("noise sd must be >= 0");
    return spec;
}

Window parse_window_flag(const std::string& flag, const ScenarioConfig& config) {
    const auto colon = flag.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("window must be A:B");
    Window window{std::stoi(flag.substr(0, colon)), std::stoi(flag.substr(colon + 1))};
    if (window.first < 1 || window.last > config.horizon || window.first > window.last)
        throw std::invalid_argument("window out of range");
    return window;
}

std::string sibling_path(const std::string& base, const std::string& suffix) {
    std::filesystem::path p(base);
    std::filesystem::path stem = p.parent_path() / p.stem();
    return stem.string() + suffix;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_path) {
    const ScenarioConfig config = load_validated(config_path, seed);
    const MarketPath path = simulate_market(config);
    write_csv_file(out_path, [&](std::ostream& out) { write_market_csv(out, path); });
    return 0;
}

int cmd_montecarlo(const std::string& config_path, int reps,
                   std::optional<std::uint64_t> seed, const std::string& out_path,
                   const std::vector<std::string>& window_flags, bool serial) {
    const ScenarioConfig config = load_validated(config_path, std::nullopt);
    const std::uint64_t master = seed.value_or(config.seed);

    std::vector<Window> windows;
    for (const auto& flag : window_flags) windows.push_back(parse_window_flag(flag, config));
    if (windows.empty()) windows = default_windows(config);

    ExperimentOptions options;
    options.parallel = !serial;
    options.collect_period_averages = true;
    const std::vector<ModelKind> models{ModelKind::naive, ModelKind::demand_only,
                                        ModelKind::coupled_true, ModelKind::coupled_observed};
    const ExperimentReport report =
        run_experiment(config, models, windows, reps, master, options);

    write_file(out_path, report_to_json(report) + "\n");
    write_csv_file(sibling_path(out_path, "_table.csv"),
                   [&](std::ostream& out) { write_report_table_csv(out, report); });
    write_csv_file(sibling_path(out_path, "_plot.csv"), [&](std::ostream& out) {
        write_period_averages_csv(out, report.period_averages);
    });
    return 0;
}

int cmd_estimate(const std::string& in_path, const std::string& ceiling_column,
                 double tolerance, const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("cannot open input file '" + in_path + "'");
    const MarketPath path = read_market_csv(in);
    const Series& ceiling = ceiling_column == "S_obs" ? path.s_obs : path.s;
    if (ceiling_column != "S" && ceiling_column != "S_obs")
        throw std::invalid_argument("ceiling column must be S or S_obs");

    const CensoredSample sample = detect_censoring(path.b, ceiling, tolerance);
    const Ar1Params init = fit_ar1(path.b);
    const EmResult result = em_censored_ar1(sample, init, 1e-6, 200);
    write_file(out_path,
               estimation_report_to_json(result, sample.censored_fraction(), tolerance) + "\n");
    return 0;
}

int cmd_gap(int k, double shift, double concentration, const std::string& config_path,
            std::optional<std::uint64_t> seed, const std::string& out_path) {
    const ScenarioConfig config = load_validated(config_path, seed);
    const MarketPath path = simulate_market(config);

    Rng rng(derive_seed(config.seed, 11));
    auto [search, book] =
        simulate_gap_compositions(k, path.binding, shift, concentration, rng);
    GapSeries gaps = gap_series(search, book);
    gaps.binding = path.binding;
    write_csv_file(out_path, [&](std::ostream& out) { write_gap_csv(out, gaps); });
    return 0;
}

int cmd_sensitivity(const std::string& config_path, const std::vector<std::string>& level_flags,
                    int reps, std::optional<std::uint64_t> seed, const std::string& out_path,
                    bool serial) {
    const ScenarioConfig config = load_validated(config_path, std::nullopt);
    const std::uint64_t master = seed.value_or(config.seed);
    std::vector<NoiseSpec> levels;
    for (const auto& flag : level_flags) levels.push_back(parse_noise_flag(flag));
    if (levels.empty())
        levels = {{NoiseKind::none, 0.0}, {NoiseKind::additive, 2.0},
                  {NoiseKind::additive, 5.0}, {NoiseKind::additive, 10.0}};

    ExperimentOptions options;
    options.parallel = !serial;
    const auto reports = sensitivity_sweep(config, levels, reps, master, options);

    std::ostringstream combined;
    combined << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        combined << "{\"noise\":\"" << to_string(levels[i].kind) << ":" << levels[i].sd
                 << "\",\"report\":" << report_to_json(reports[i]) << "}";
        if (i + 1 < reports.size()) combined << ",";
        combined << "\n";
    }
    combined << "]\n";
    write_file(out_path, combined.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"supply-censored market simulation and forecast evaluation"};
    app.require_subcommand(1);

    std::string config_path, out_path, in_path;
    std::string ceiling_column = "S";
    std::optional<std::uint64_t> seed;
    int reps = 500;
    double tolerance = 1e-9;
    int k = 6;
    double shift = 0.5, concentration = 50.0;
    bool serial = false;
    std::vector<std::string> window_flags, level_flags;

    auto* simulate = app.add_subcommand("simulate", "simulate one market path to CSV");
    simulate->add_option("--config", config_path)->required();
    simulate->add_option("--seed", seed);
    simulate->add_option("--out", out_path)->required();

    auto* montecarlo = app.add_subcommand("montecarlo", "replication experiment report");
    montecarlo->add_option("--config", config_path)->required();
    montecarlo->add_option("--reps", reps);
    montecarlo->add_option("--seed", seed);
    montecarlo->add_option("--out", out_path)->required();
    montecarlo->add_option("--window", window_flags, "evaluation window A:B (repeatable)");
    montecarlo->add_flag("--serial", serial, "use the serial reference path");

    auto* estimate = app.add_subcommand("estimate", "censored-demand estimation report");
    estimate->add_option("--in", in_path)->required();
    estimate->add_option("--ceiling", ceiling_column, "ceiling column: S or S_obs");
    estimate->add_option("--tol", tolerance, "censoring detection tolerance");
    estimate->add_option("--out", out_path)->required();

    auto* gap = app.add_subcommand("gap", "synthetic search-to-booking gap series");
    gap->add_option("--config", config_path)->required();
    gap->add_option("--k", k, "lead-time bins");
    gap->add_option("--shift", shift, "binding-period shift strength");
    gap->add_option("--concentration", concentration, "Dirichlet concentration");
    gap->add_option("--seed", seed);
    gap->add_option("--out", out_path)->required();

    auto* sensitivity = app.add_subcommand("sensitivity", "supply-noise sensitivity sweep");
    sensitivity->add_option("--config", config_path)->required();
    sensitivity->add_option("--noise", level_flags, "noise level KIND:SD (repeatable)");
    sensitivity->add_option("--reps", reps);
    sensitivity->add_option("--seed", seed);
    sensitivity->add_option("--out", out_path)->required();
    sensitivity->add_flag("--serial", serial);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, seed, out_path);
        if (montecarlo->parsed())
            return cmd_montecarlo(config_path, reps, seed, out_path, window_flags, serial);
        if (estimate->parsed()) return cmd_estimate(in_path, ceiling_column, tolerance, out_path);
        if (gap->parsed()) return cmd_gap(k, shift, concentration, config_path, seed, out_path);
        if (sensitivity->parsed())
            return cmd_sensitivity(config_path, level_flags, reps, seed, out_path, serial);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
