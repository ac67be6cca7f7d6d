// Compares the OpenMP replication loop against the serial reference path:
// verifies identical reports, then prints timings and speedup.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "supcast/montecarlo.hpp"

int main(int argc, char** argv) {
    using namespace supcast;
    const int reps = argc > 1 ? std::atoi(argv[1]) : 2000;

    const ScenarioConfig config = default_scenario();
    const std::vector<ModelKind> models{ModelKind::demand_only, ModelKind::coupled_true};
    const std::vector<Window> windows = default_windows(config);

    ExperimentOptions serial_options;
    serial_options.parallel = false;
    ExperimentOptions parallel_options;
    parallel_options.parallel = true;

    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport serial = run_experiment(config, models, windows, reps, 1, serial_options);
    const auto t1 = std::chrono::steady_clock::now();
    const ExperimentReport parallel =
        run_experiment(config, models, windows, reps, 1, parallel_options);
    const auto t2 = std::chrono::steady_clock::now();

    bool identical = true;
    for (std::size_t m = 0; m < models.size(); ++m)
        for (std::size_t w = 0; w < windows.size(); ++w) {
            identical = identical &&
                        serial.cells[m][w].rmse == parallel.cells[m][w].rmse &&
                        serial.cells[m][w].mean_bias == parallel.cells[m][w].mean_bias &&
                        serial.cells[m][w].crps == parallel.cells[m][w].crps;
        }

    const double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    std::printf("replications: %d\n", reps);
    std::printf("serial reference: %.1f ms\n", serial_ms);
    std::printf("openmp parallel:  %.1f ms\n", parallel_ms);
    std::printf("speedup: %.2fx\n", serial_ms / parallel_ms);
    std::printf("reports identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
