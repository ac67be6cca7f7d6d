#include "supcast/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace supcast {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::vector<std::string>& allowed,
                         const std::string& context) {
    for (auto it = object.begin(); it != object.end(); ++it) {
        bool known = false;
        for (const auto& key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + context);
    }
}

ShockTarget parse_target(const std::string& s) {
    if (s == "demand_mean") return ShockTarget::demand_mean;
    if (s == "supply_intercept") return ShockTarget::supply_intercept;
    if (s == "coupling_slope") return ShockTarget::coupling_slope;
    throw std::invalid_argument("config: unknown shock target '" + s + "'");
}

ShockKind parse_kind(const std::string& s) {
    if (s == "demand") return ShockKind::demand;
    if (s == "supply") return ShockKind::supply;
    if (s == "intervention") return ShockKind::intervention;
    throw std::invalid_argument("config: unknown shock kind '" + s + "'");
}

NoiseKind parse_noise_kind(const std::string& s) {
    if (s == "none") return NoiseKind::none;
    if (s == "additive") return NoiseKind::additive;
    if (s == "multiplicative") return NoiseKind::multiplicative;
    throw std::invalid_argument("config: unknown noise kind '" + s + "'");
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.10g", v);
    return buffer;
}

} // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown_keys(doc, {"horizon", "train_end", "demand", "supply", "shocks",
                              "matching_m", "supply_noise", "burn_in", "seed"},
                        "top level");
    ScenarioConfig config;
    config.horizon = doc.at("horizon").get<int>();
    config.train_end = doc.at("train_end").get<int>();

    const json& demand = doc.at("demand");
    reject_unknown_keys(demand, {"mean", "persistence", "sd"}, "demand");
    config.demand = {demand.at("mean").get<double>(), demand.at("persistence").get<double>(),
                     demand.at("sd").get<double>()};

    const json& supply = doc.at("supply");
    reject_unknown_keys(supply, {"intercept", "slope", "sd"}, "supply");
    config.supply = {supply.at("intercept").get<double>(), supply.at("slope").get<double>(),
                     supply.at("sd").get<double>()};

    config.shocks.clear();
    if (doc.contains("shocks")) {
        for (const json& entry : doc.at("shocks")) {
            reject_unknown_keys(entry, {"time", "target", "new_value", "kind"}, "shocks[]");
            ShockSpec shock;
            shock.time = entry.at("time").get<int>();
            shock.target = parse_target(entry.at("target").get<std::string>());
            shock.new_value = entry.at("new_value").get<double>();
            shock.kind = parse_kind(entry.at("kind").get<std::string>());
            config.shocks.push_back(shock);
        }
    }
    config.matching_m = doc.at("matching_m").get<double>();

    const json& noise = doc.at("supply_noise");
    reject_unknown_keys(noise, {"kind", "sd"}, "supply_noise");
    config.supply_noise = {parse_noise_kind(noise.at("kind").get<std::string>()),
                           noise.at("sd").get<double>()};

    config.burn_in = doc.at("burn_in").get<int>();
    config.seed = doc.at("seed").get<std::uint64_t>();
    return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
    json doc;
    doc["horizon"] = config.horizon;
    doc["train_end"] = config.train_end;
    doc["demand"] = {{"mean", config.demand.mean},
                     {"persistence", config.demand.persistence},
                     {"sd", config.demand.sd}};
    doc["supply"] = {{"intercept", config.supply.intercept},
                     {"slope", config.supply.slope},
                     {"sd", config.supply.sd}};
    doc["shocks"] = json::array();
    for (const ShockSpec& shock : config.shocks)
        doc["shocks"].push_back({{"time", shock.time},
                                 {"target", to_string(shock.target)},
                                 {"new_value", shock.new_value},
                                 {"kind", to_string(shock.kind)}});
    doc["matching_m"] = config.matching_m;
    doc["supply_noise"] = {{"kind", to_string(config.supply_noise.kind)},
                           {"sd", config.supply_noise.sd}};
    doc["burn_in"] = config.burn_in;
    doc["seed"] = config.seed;
    return doc.dump(2);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json(buffer.str());
}

std::string config_digest(const ScenarioConfig& config) {
    const std::string canonical = scenario_to_json(config);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

void write_market_csv(std::ostream& out, const MarketPath& path) {
    out << "t,D,S,S_obs,B,binding\n";
    for (std::size_t i = 0; i < path.d.size(); ++i)
        out << (i + 1) << ',' << format_double(path.d[i]) << ',' << format_double(path.s[i])
            << ',' << format_double(path.s_obs[i]) << ',' << format_double(path.b[i]) << ','
            << (path.binding[i] ? 1 : 0) << '\n';
}

MarketPath read_market_csv(std::istream& in) {
    MarketPath path;
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,D,S,S_obs,B,binding", 0) != 0)
        throw std::invalid_argument("market csv: missing or malformed header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw std::invalid_argument("market csv: expected 6 columns, got " +
                                        std::to_string(fields.size()));
        path.d.push_back(std::stod(fields[1]));
        path.s.push_back(std::stod(fields[2]));
        path.s_obs.push_back(std::stod(fields[3]));
        path.b.push_back(std::stod(fields[4]));
        path.binding.push_back(fields[5] == "1");
    }
    return path;
}

void write_forecast_csv(std::ostream& out, const std::vector<ForecastSeries>& forecasts,
                        const Series& actual) {
    out << "t,model,point,predictive_sd,actual\n";
    for (const ForecastSeries& fs : forecasts)
        for (int t = fs.start; t <= fs.end; ++t)
            out << t << ',' << fs.model_label << ',' << format_double(fs.point_at(t)) << ','
                << format_double(fs.sd_at(t)) << ','
                << format_double(actual[static_cast<std::size_t>(t - 1)]) << '\n';
}

void write_gap_csv(std::ostream& out, const GapSeries& gaps) {
    out << "t,d_aitchison,d_l1,binding\n";
    for (std::size_t i = 0; i < gaps.t.size(); ++i)
        out << gaps.t[i] << ',' << format_double(gaps.d_aitchison[i]) << ','
            << format_double(gaps.d_l1[i]) << ','
            << (i < gaps.binding.size() && gaps.binding[i] ? 1 : 0) << '\n';
}

std::string report_to_json(const ExperimentReport& report) {
    json doc;
    doc["replications"] = report.replications;
    doc["master_seed"] = report.master_seed;
    doc["config_digest"] = report.config_digest;
    doc["cells"] = json::array();
    for (std::size_t m = 0; m < report.model_labels.size(); ++m)
        for (std::size_t w = 0; w < report.windows.size(); ++w) {
            const CellStats& cell = report.cells[m][w];
            doc["cells"].push_back({{"model", report.model_labels[m]},
                                    {"window", report.window_labels[w]},
                                    {"first", report.windows[w].first},
                                    {"last", report.windows[w].last},
                                    {"rmse", cell.rmse},
                                    {"rmse_se", cell.rmse_se},
                                    {"mean_bias", cell.mean_bias},
                                    {"bias_se", cell.bias_se},
                                    {"mae", cell.mae},
                                    {"mae_se", cell.mae_se},
                                    {"crps", cell.crps},
                                    {"crps_se", cell.crps_se}});
        }
    return doc.dump(2);
}

void write_report_table_csv(std::ostream& out, const ExperimentReport& report) {
    out << "model";
    for (const std::string& label : report.window_labels)
        out << ',' << label << "_rmse" << ',' << label << "_bias";
    out << '\n';
    for (std::size_t m = 0; m < report.model_labels.size(); ++m) {
        out << report.model_labels[m];
        for (std::size_t w = 0; w < report.windows.size(); ++w)
            out << ',' << format_double(report.cells[m][w].rmse) << ','
                << format_double(report.cells[m][w].mean_bias);
        out << '\n';
    }
}

void write_period_averages_csv(std::ostream& out, const PeriodAverages& averages) {
    out << "t,model,mean_forecast,mean_error,mean_actual\n";
    for (std::size_t m = 0; m < averages.model_labels.size(); ++m)
        for (std::size_t i = 0; i < averages.t.size(); ++i)
            out << averages.t[i] << ',' << averages.model_labels[m] << ','
                << format_double(averages.mean_point[m][i]) << ','
                << format_double(averages.mean_error[m][i]) << ','
                << format_double(averages.mean_actual[i]) << '\n';
}

std::string estimation_report_to_json(const EmResult& result, double censored_fraction,
                                      double tolerance) {
    json doc;
    doc["mean"] = result.params.mean;
    doc["persistence"] = result.params.persistence;
    doc["sd"] = result.params.sd;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["censored_fraction"] = censored_fraction;
    doc["tolerance"] = tolerance;
    return doc.dump(2);
}

} // namespace supcast
