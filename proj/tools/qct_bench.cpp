// Compares the serial reference trial runner against the OpenMP one on the
// same scenario and verifies they render byte-identical reports.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qct/netsim.hpp"
#include "qct/report.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double run_timed(const qct::ScenarioConfig& config, qct::RunMode mode,
                 std::string& rendered) {
    const auto start = Clock::now();
    const qct::AggregateReport report = qct::run_trials(config, mode);
    const double ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    rendered = qct::render_report(config, report, qct::ReportFormat::Json, true);
    return ms;
}

} // namespace

int main(int argc, char** argv) {
    int trials = argc > 1 ? std::atoi(argv[1]) : 200;
    if (trials < 1) trials = 1;

    qct::ScenarioConfig config;
    config.m = 4;
    config.agents = {{"Charlie", qct::Protocol::Ekert91},
                     {"Dick", qct::Protocol::Qsdc},
                     {"Erika", qct::Protocol::Ekert91}};
    config.collaborators = {"Charlie", "Dick", "Erika"};
    config.trials = trials;
    config.master_seed = 1;

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif

    std::string serial_report, parallel_report;
    const double serial_ms = run_timed(config, qct::RunMode::Serial, serial_report);
    const double parallel_ms = run_timed(config, qct::RunMode::Parallel, parallel_report);

    std::cout << "trials:        " << trials << "\n";
    std::cout << "threads:       " << threads << "\n";
    std::cout << "serial:        " << serial_ms << " ms\n";
    std::cout << "parallel:      " << parallel_ms << " ms\n";
    std::cout << "speedup:       " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
              << "x\n";

    if (serial_report != parallel_report) {
        std::cout << "reports:       MISMATCH\n";
        return 1;
    }
    std::cout << "reports:       identical (" << serial_report.size() << " bytes)\n";
    return 0;
}
