// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line; the process exits nonzero if any criterion fails.
// argv[1] must be the path to the CLI binary (used by the determinism check).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "supcast/censored.hpp"
#include "supcast/compositional.hpp"
#include "supcast/dgp.hpp"
#include "supcast/forecasters.hpp"
#include "supcast/io.hpp"
#include "supcast/metrics.hpp"
#include "supcast/montecarlo.hpp"

using namespace supcast;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s: criterion %d — %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++failures;
}

bool in_band(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::string cell_line(const char* name, double rmse, double bias, bool rmse_ok, bool bias_ok) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "    %-28s rmse %6.3f [%s]  bias %+6.3f [%s]", name, rmse,
                  rmse_ok ? "ok" : "OUT", bias, bias_ok ? "ok" : "OUT");
    return buf;
}

// ---- criteria 1 and 2 share one 500-replication experiment ----

void criteria_1_and_2() {
    const ScenarioConfig config = default_scenario();
    const std::vector<ModelKind> models{ModelKind::demand_only, ModelKind::coupled_true};
    const auto windows = default_windows(config); // [131,150], [151,200]

    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport r = run_experiment(config, models, windows, 500, config.seed);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const CellStats& d_pre = r.cells[0][0];
    const CellStats& d_post = r.cells[0][1];
    const CellStats& c_pre = r.cells[1][0];
    const CellStats& c_post = r.cells[1][1];

    struct Check {
        const char* name;
        double rmse, bias;
        double rmse_lo, rmse_hi, bias_lo, bias_hi;
    };
    const std::vector<Check> checks{
        {"demand-only post-shock", d_post.rmse, d_post.mean_bias, 11.9, 14.9, 10.3, 13.3},
        {"coupled post-shock", c_post.rmse, c_post.mean_bias, 4.6, 6.2, -0.6, 1.4},
        {"demand-only pre-shock", d_pre.rmse, d_pre.mean_bias, 4.6, 5.8, -1.0, 1.0},
        {"coupled pre-shock", c_pre.rmse, c_pre.mean_bias, 4.6, 5.8, -1.0, 1.0},
    };

    bool pass = seconds < 10.0;
    std::vector<std::string> lines;
    for (const auto& chk : checks) {
        const bool rmse_ok = in_band(chk.rmse, chk.rmse_lo, chk.rmse_hi);
        const bool bias_ok = in_band(chk.bias, chk.bias_lo, chk.bias_hi);
        pass = pass && rmse_ok && bias_ok;
        lines.push_back(cell_line(chk.name, chk.rmse, chk.bias, rmse_ok, bias_ok));
    }

    char head[128];
    std::snprintf(head, sizeof(head), "benchmark table bands, 500 replications in %.2f s%s",
                  seconds, seconds < 10.0 ? "" : " [OVER BUDGET]");
    report(1, pass, head);
    for (const auto& line : lines) std::printf("%s\n", line.c_str());

    const double reduction = 1.0 - c_post.rmse / d_post.rmse;
    char msg[128];
    std::snprintf(msg, sizeof(msg), "post-shock RMSE reduction %.1f%% (threshold 50%%)",
                  100.0 * reduction);
    report(2, reduction >= 0.50, msg);
}

void criterion_3() {
    ScenarioConfig config = default_scenario();
    long pre_binding = 0, pre_total = 0, post_binding = 0, post_total = 0;
    for (int rep = 0; rep < 700; ++rep) {
        config.seed = 300000 + static_cast<std::uint64_t>(rep);
        const MarketPath path = simulate_market(config);
        for (int t = 1; t <= config.train_end; ++t) {
            pre_binding += path.binding[static_cast<std::size_t>(t - 1)] ? 1 : 0;
            ++pre_total;
        }
        for (int t = config.train_end + 1; t <= config.horizon; ++t) {
            post_binding += path.binding[static_cast<std::size_t>(t - 1)] ? 1 : 0;
            ++post_total;
        }
    }
    const double pre = static_cast<double>(pre_binding) / static_cast<double>(pre_total);
    const double post = static_cast<double>(post_binding) / static_cast<double>(post_total);
    const bool pass = pre_total >= 100000 && in_band(pre, 0.15, 0.30) && post >= 0.85;
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "binding fraction pre %.3f (band [0.15,0.30]), post %.3f (>= 0.85), %ld draws",
                  pre, post, pre_total + post_total);
    report(3, pass, msg);
}

void criterion_4() {
    // ~30% of N(50, 7^2) stationary mass lies above 50 + 0.524*7
    const double ceiling = 53.67;
    const int reps = 100, n = 5000;
    double em_mean = 0.0, em_phi = 0.0, naive_mean = 0.0, naive_phi = 0.0, cens = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(400000 + static_cast<std::uint64_t>(rep));
        const Series d = simulate_demand({50.0, 0.7, 5.0}, {}, n, 100, rng);
        Series b(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) b[i] = std::min(d[i], ceiling);
        const CensoredSample sample = detect_censoring(b, Series(d.size(), ceiling), 1e-9);
        const Ar1Params naive = fit_ar1(sample.b);
        const EmResult em = em_censored_ar1(sample, naive, 1e-6, 200);
        em_mean += em.params.mean;
        em_phi += em.params.persistence;
        naive_mean += naive.mean;
        naive_phi += naive.persistence;
        cens += sample.censored_fraction();
    }
    em_mean /= reps;
    em_phi /= reps;
    naive_mean /= reps;
    naive_phi /= reps;
    cens /= reps;

    const bool recovers = std::abs(em_mean - 50.0) <= 1.0 && std::abs(em_phi - 0.7) <= 0.05;
    const bool beats_naive = std::abs(em_mean - 50.0) < std::abs(naive_mean - 50.0);
    char msg[200];
    std::snprintf(msg, sizeof(msg),
                  "censored-EM recovery: mean %.3f (naive %.3f), persistence %.3f (naive %.3f), "
                  "censoring %.0f%%, %d replications",
                  em_mean, naive_mean, em_phi, naive_phi, 100.0 * cens, reps);
    report(4, recovers && beats_naive, msg);
}

// integrand jumps at x = y, so each side gets its own Simpson pass
double crps_quadrature(double mean, double sd, double y) {
    auto simpson = [&](double lo, double hi, bool above) {
        const int n = 20000;
        const double h = (hi - lo) / n;
        auto integrand = [&](double x) {
            const double f = normal_cdf((x - mean) / sd) - (above ? 1.0 : 0.0);
            return f * f;
        };
        double sum = integrand(lo) + integrand(hi);
        for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * integrand(lo + i * h);
        return sum * h / 3.0;
    };
    const double lo = std::min(mean - 12.0 * sd, y), hi = std::max(mean + 12.0 * sd, y);
    return simpson(lo, y, false) + simpson(y, hi, true);
}

void criterion_5() {
    const double closed = crps_gaussian(3.0, 1.0, 3.0);
    const double quad = crps_quadrature(3.0, 1.0, 3.0);
    const bool worked = std::abs(closed - 0.23370) <= 1e-4 && std::abs(closed - quad) <= 1e-4;

    const bool point_mass = crps_gaussian(2.0, 0.0, 7.5) == std::abs(7.5 - 2.0);

    Rng rng(501);
    std::normal_distribution<double> normal(10.0, 2.0);
    Series samples(100000);
    for (auto& v : samples) v = normal(rng);
    bool empirical = true;
    for (double y : {8.0, 10.0, 13.0})
        empirical = empirical &&
                    std::abs(crps_empirical(samples, y) - crps_gaussian(10.0, 2.0, y)) < 0.005;

    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "scoring identities: closed form %.5f vs quadrature %.5f; point mass %s; "
                  "empirical within 0.005 %s",
                  closed, quad, point_mass ? "exact" : "WRONG", empirical ? "yes" : "NO");
    report(5, worked && point_mass && empirical, msg);
}

void criterion_6() {
    bool pass = true;

    const double worked = aitchison_distance(close({0.7, 0.2, 0.1}), close({0.1, 0.2, 0.7}));
    pass = pass && std::abs(worked - std::sqrt(2.0) * std::log(7.0)) <= 1e-9;

    std::mt19937_64 rng(601);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    auto draw = [&]() {
        std::vector<double> v(5);
        for (auto& p : v) p = u(rng);
        return close(v);
    };
    for (int trial = 0; trial < 500 && pass; ++trial) {
        const Composition a = draw(), b = draw(), c = draw(), r = draw();
        const auto za = clr(a);
        double zsum = 0.0;
        for (double z : za) zsum += z;
        pass = pass && std::abs(zsum) <= 1e-9;
        pass = pass && aitchison_distance(a, a) <= 1e-9;
        pass = pass &&
               std::abs(aitchison_distance(a, b) - aitchison_distance(b, a)) <= 1e-9;
        pass = pass && aitchison_distance(a, c) <=
                           aitchison_distance(a, b) + aitchison_distance(b, c) + 1e-9;
        pass = pass && std::abs(aitchison_distance(perturb(a, r), perturb(b, r)) -
                                aitchison_distance(a, b)) <= 1e-9;
    }

    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "simplex geometry: worked value %.5f (target %.5f), axioms on 500 triples",
                  worked, std::sqrt(2.0) * std::log(7.0));
    report(6, pass, msg);
}

void criterion_7() {
    ScenarioConfig config = default_scenario();
    config.shocks.clear();
    config.supply = {500.0, 0.0, 1.0};

    double max_diff = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        config.seed = 700000 + static_cast<std::uint64_t>(rep);
        const MarketPath path = simulate_market(config);
        const ForecastSeries d_only = demand_only_forecast(path, config);
        const ForecastSeries coupled = coupled_forecast(path, config, SupplyChannel::true_s);
        for (int t = coupled.start; t <= coupled.end; ++t)
            max_diff = std::max(max_diff, std::abs(coupled.point_at(t) - d_only.point_at(t)));
    }

    const NestedComparison nc =
        nested_comparison(config, ModelKind::demand_only, ModelKind::coupled_true, 200, 701,
                          {config.train_end + 1, config.horizon});

    const bool pass = max_diff <= 1e-6 && nc.rejection_fraction <= 0.15;
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "slack-supply equivalence: max forecast gap %.2e (<= 1e-6), "
                  "rejection fraction %.3f (<= 0.15)",
                  max_diff, nc.rejection_fraction);
    report(7, pass, msg);
}

// ---- criterion 8: CLI determinism ----

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool run_cli(const std::string& cli, const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
}

void criterion_8(const std::string& cli) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "supcast_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");

    const fs::path config_path = dir / "scenario.json";
    {
        std::ofstream out(config_path);
        out << scenario_to_json(default_scenario()) << "\n";
    }
    const std::string cfg = config_path.string();

    bool pass = true;
    std::string failed;
    auto twice = [&](const std::string& args_template, const std::string& out_name) {
        if (!pass) return;
        for (const char* sub : {"a", "b"}) {
            std::string args = args_template;
            const std::string token = "{OUT}";
            for (auto at = args.find(token); at != std::string::npos; at = args.find(token))
                args.replace(at, token.size(), (dir / sub / out_name).string());
            if (!run_cli(cli, args)) {
                pass = false;
                failed = out_name + " (nonzero exit)";
                return;
            }
        }
    };

    twice("simulate --config " + cfg + " --out {OUT}", "path.csv");
    twice("montecarlo --config " + cfg + " --reps 50 --out {OUT}", "report.json");
    twice("gap --config " + cfg + " --out {OUT}", "gap.csv");
    twice("sensitivity --config " + cfg + " --reps 20 --noise none --noise additive:5 --out {OUT}",
          "sweep.json");
    if (pass) {
        // estimate consumes the simulate output of its own side
        for (const char* sub : {"a", "b"}) {
            const std::string in = (dir / sub / "path.csv").string();
            const std::string out = (dir / sub / "estimate.json").string();
            if (!run_cli(cli, "estimate --in " + in + " --out " + out)) {
                pass = false;
                failed = "estimate.json (nonzero exit)";
            }
        }
    }

    int compared = 0;
    if (pass) {
        for (const auto& entry : fs::directory_iterator(dir / "a")) {
            const fs::path name = entry.path().filename();
            if (slurp(entry.path()) != slurp(dir / "b" / name)) {
                pass = false;
                failed = name.string() + " (byte mismatch)";
                break;
            }
            ++compared;
        }
        pass = pass && compared >= 7; // csv + json + table/plot siblings
    }

    char msg[160];
    if (pass)
        std::snprintf(msg, sizeof(msg),
                      "CLI determinism: %d output files byte-identical across re-runs", compared);
    else
        std::snprintf(msg, sizeof(msg), "CLI determinism: %s", failed.c_str());
    report(8, pass, msg);
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
        return 2;
    }
    criteria_1_and_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8(argv[1]);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
