#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "qct/config.hpp"
#include "qct/demo.hpp"
#include "qct/error.hpp"
#include "qct/netsim.hpp"
#include "qct/report.hpp"
#include "qct/selftest.hpp"

namespace {

int exit_code_for(const qct::Error& e) {
    switch (e.code()) {
        case qct::errc::parse_error:
        case qct::errc::validation_error:
            return 2;
        case qct::errc::retries_exhausted:
            return 3;
        default:
            return 1;
    }
}

int run_scenario(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<int> trials, const std::string& format,
                 const std::string& out_path, bool per_trial, bool serial,
                 int threads) {
    qct::ScenarioConfig config = qct::load_config_file(config_path);
    if (seed) config.master_seed = *seed;
    if (trials) {
        config.trials = *trials;
        qct::validate(config);
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif

    const qct::RunMode mode = serial ? qct::RunMode::Serial : qct::RunMode::Parallel;
    const qct::AggregateReport report = qct::run_trials(config, mode);
    const std::string rendered = qct::render_report(
        config, report, qct::report_format_from(format),
        per_trial || format == "csv");

    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write to '" << out_path << "'\n";
            return 1;
        }
        out << rendered;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic simulator of many-agent controlled teleportation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool per_trial = false;
    bool serial = false;
    int threads = 0;

    auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("--config", config_path, "scenario config file")->required();
    run->add_option("--seed", seed, "override master_seed");
    run->add_option("--trials", trials, "override trial count");
    run->add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_flag("--per-trial", per_trial, "include per-trial records in the report");
    run->add_flag("--serial", serial, "use the serial reference trial runner");
    run->add_option("--threads", threads, "worker thread count (0 = runtime default)");

    auto* demo = app.add_subcommand(
        "demo", "print the two-agent worked example announcement transformation");
    auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (demo->parsed()) {
            std::cout << qct::demo_text(qct::run_demo());
            return 0;
        }
        if (selftest->parsed()) return qct::selftest(std::cout) ? 0 : 1;
        return run_scenario(config_path, seed, trials, format, out_path, per_trial,
                            serial, threads);
    } catch (const qct::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
