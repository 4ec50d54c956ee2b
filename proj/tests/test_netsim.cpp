#include <cmath>
#include <set>

#include <doctest.h>

#include "qct/error.hpp"
#include "qct/netsim.hpp"
#include "qct/report.hpp"

using namespace qct;

namespace {

ScenarioConfig base_config() {
    ScenarioConfig config;
    config.m = 4;
    config.agents = {{"Charlie", Protocol::Ekert91}, {"Dick", Protocol::Qsdc}};
    config.collaborators = {"Charlie", "Dick"};
    config.trials = 3;
    config.master_seed = 12;
    config.ekert.pairs = 600;
    return config;
}

EveModel intercept(double p) {
    EveModel eve;
    eve.strategy = EveModel::Strategy::InterceptResend;
    eve.intercept_probability = p;
    return eve;
}

} // namespace

TEST_CASE("validation catches config mistakes") {
    ScenarioConfig config = base_config();
    config.collaborators.push_back("Mallory");
    CHECK_THROWS_AS(validate(config), Error);

    config = base_config();
    config.m = 0;
    CHECK_THROWS_AS(validate(config), Error);

    config = base_config();
    config.agents.push_back({"Charlie", Protocol::Qsdc});
    CHECK_THROWS_AS(validate(config), Error);

    config = base_config();
    config.input_mode = InputMode::Fixed;
    config.fixed_inputs = {MessageQubitSpec(1.0, 0.0)}; // needs m entries
    CHECK_THROWS_AS(validate(config), Error);
}

TEST_CASE("key establishment produces matching copies on clean channels") {
    ScenarioConfig config = base_config();
    Rng rng(trial_seed(config.master_seed, 0));
    const auto keys = establish_keys(config, rng);
    REQUIRE(keys.size() == 2);
    for (const auto& [id, key] : keys) {
        CHECK(key.alice.bits.size() == 1);
        CHECK(key.alice.bits == key.agent.bits);
        CHECK(key.summary.attempts == 1);
        if (key.summary.protocol == Protocol::Ekert91) {
            CHECK(key.summary.agreement == 1.0);
            CHECK(key.summary.sifted_len > 0);
        } else {
            CHECK(key.summary.qber_forward == 0.0);
            CHECK(key.summary.qber_backward == 0.0);
        }
    }
}

TEST_CASE("per-qubit key mode hands out m bits per agent") {
    ScenarioConfig config = base_config();
    config.key_mode = KeyMode::PerQubit;
    Rng rng(trial_seed(9, 0));
    const auto keys = establish_keys(config, rng);
    for (const auto& [id, key] : keys) {
        CHECK(key.alice.bits.size() == 4);
        CHECK(key.alice.bits == key.agent.bits);
    }
}

TEST_CASE("zero agents degenerates to plain teleportation") {
    ScenarioConfig config;
    config.m = 3;
    config.trials = 2;
    config.master_seed = 5;
    const auto report = run_trials(config, RunMode::Serial);
    CHECK(report.qubits == 6);
    CHECK(std::abs(report.mean_fidelity - 1.0) <= 1e-9);
    for (const auto& trial : report.per_trial) {
        CHECK(trial.uniform_residual_shift() == 0);
        CHECK(trial.agent_key_bits.empty());
    }
}

TEST_CASE("full collaboration reconstructs exactly (both protocols, n up to 16)") {
    ScenarioConfig config = base_config();
    config.m = 8;
    config.trials = 2;
    config.ekert.pairs = 400;
    config.agents.clear();
    for (int i = 0; i < 16; ++i)
        config.agents.push_back({"agent" + std::to_string(i),
                                 i % 2 ? Protocol::Qsdc : Protocol::Ekert91});
    config.collaborators.clear();
    for (const auto& agent : config.agents) config.collaborators.push_back(agent.id);

    const auto report = run_trials(config, RunMode::Serial);
    CHECK(report.qubits == 16);
    CHECK(report.min_fidelity >= 1.0 - 1e-9);
    for (const auto& trial : report.per_trial) {
        CHECK(trial.decoded_codes == trial.true_codes);
        CHECK(trial.uniform_residual_shift() == 0);
    }
}

TEST_CASE("reconstruction is exact iff the residual shift vanishes") {
    ScenarioConfig config = base_config();
    config.m = 6;
    config.trials = 30;
    config.collaborators = {"Dick"}; // Charlie withholds
    const auto report = run_trials(config, RunMode::Serial);

    for (const auto& trial : report.per_trial) {
        const int residual = trial.uniform_residual_shift();
        const int withheld = trial.agent_key_bits.at("Charlie")[0];
        CHECK(residual == withheld);
        if (residual == 0) {
            CHECK(trial.decoded_codes == trial.true_codes);
            CHECK(trial.min_fidelity >= 1.0 - 1e-9);
        } else {
            // Fixed nonzero offset at every position.
            for (std::size_t j = 0; j < trial.true_codes.size(); ++j) {
                CHECK(trial.decoded_codes.codes[j] ==
                      (trial.true_codes.codes[j] + residual) % 4);
                CHECK(trial.decoded_codes.codes[j] != trial.true_codes.codes[j]);
            }
        }
    }
}

TEST_CASE("withheld keys corrupt Haar inputs to mean fidelity ~ 1/3") {
    ScenarioConfig config = base_config();
    config.m = 8;
    config.trials = 1500;
    config.master_seed = 77;
    config.ekert.pairs = 400;
    config.agents = {{"Charlie", Protocol::Ekert91}};
    config.collaborators = {};

    const auto report = run_trials(config);
    double sum = 0.0;
    long count = 0;
    for (const auto& trial : report.per_trial) {
        if (trial.uniform_residual_shift() == 0) {
            CHECK(trial.min_fidelity >= 1.0 - 1e-9); // honest zero-shift behavior
            continue;
        }
        for (double f : trial.fidelities) {
            sum += f;
            ++count;
        }
    }
    REQUIRE(count >= 5000);
    const double mean = sum / count;
    CHECK(mean >= 0.30);
    CHECK(mean <= 0.37);
}

TEST_CASE("classical eavesdropper never changes any statistic") {
    ScenarioConfig config = base_config();
    config.trials = 4;
    const auto baseline = run_trials(config, RunMode::Serial);

    config.classical_eavesdropper = true;
    const auto observed = run_trials(config, RunMode::Serial);

    const std::string a = render_report(config, baseline, ReportFormat::Csv, true);
    const std::string b = render_report(config, observed, ReportFormat::Csv, true);
    CHECK(a == b);
    CHECK(baseline.mean_fidelity == observed.mean_fidelity);
}

TEST_CASE("seed isolation: trials differ, reruns agree") {
    ScenarioConfig config = base_config();
    const TrialReport t0 = run_trial(config, 0);
    const TrialReport t1 = run_trial(config, 1);
    const TrialReport t0_again = run_trial(config, 0);

    CHECK(t0.fidelities == t0_again.fidelities);
    CHECK(t0.true_codes == t0_again.true_codes);
    CHECK(!(t0.true_codes == t1.true_codes && t0.fidelities == t1.fidelities));
}

TEST_CASE("serial and parallel runners render identical reports") {
    ScenarioConfig config = base_config();
    config.trials = 12;
    const auto serial = run_trials(config, RunMode::Serial);
    const auto parallel = run_trials(config, RunMode::Parallel);
    CHECK(render_report(config, serial, ReportFormat::Json, true) ==
          render_report(config, parallel, ReportFormat::Json, true));
}

TEST_CASE("ekert attack at full strength exhausts retries") {
    ScenarioConfig config = base_config();
    config.ekert_eve = intercept(1.0);
    config.ekert.retries = 1;
    config.trials = 1;
    CHECK_THROWS_AS(run_trials(config, RunMode::Serial), Error);
    CHECK_THROWS_AS(run_trials(config, RunMode::Parallel), Error);
}

TEST_CASE("weak eavesdropping triggers retries that are reported") {
    ScenarioConfig config = base_config();
    config.agents = {{"Dick", Protocol::Qsdc}};
    config.collaborators = {"Dick"};
    config.qsdc_eve = intercept(1.0);
    config.qsdc.retries = 4;
    config.qsdc.batch_size = 16; // tiny checks miss the attack sometimes
    config.qsdc.check_fraction = 0.25;
    config.trials = 40;
    int exhausted = 0, retried = 0;
    for (int t = 0; t < config.trials; ++t) {
        try {
            const TrialReport trial = run_trial(config, t);
            if (trial.key_retries > 0) ++retried;
        } catch (const Error& e) {
            CHECK(e.code() == errc::retries_exhausted);
            ++exhausted;
        }
    }
    // A 4-photon forward check plus a 3-photon backward check still passes
    // under full interception with probability ~0.25, so across 40 trials
    // some retry, some pass late, some exhaust the budget.
    CHECK(retried + exhausted > 0);
    CHECK(exhausted < 40);
}

TEST_CASE("a single-trial aggregate equals run_trial") {
    ScenarioConfig config = base_config();
    config.trials = 1;
    const auto report = run_trials(config, RunMode::Serial);
    const TrialReport direct = run_trial(config, 0);
    REQUIRE(report.per_trial.size() == 1);
    CHECK(report.per_trial[0].fidelities == direct.fidelities);
    CHECK(report.per_trial[0].true_codes == direct.true_codes);
    CHECK(report.mean_fidelity == direct.mean_fidelity);
}

TEST_CASE("per-qubit keys: positions shift independently when withheld") {
    ScenarioConfig config = base_config();
    config.key_mode = KeyMode::PerQubit;
    config.m = 6;
    config.trials = 20;
    config.master_seed = 2025;
    config.collaborators = {"Dick"}; // Charlie's per-qubit key stays hidden

    bool saw_mixed = false;
    const auto report = run_trials(config, RunMode::Serial);
    for (const auto& trial : report.per_trial) {
        const auto& withheld = trial.agent_key_bits.at("Charlie");
        REQUIRE(withheld.size() == 6);
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(trial.residual_shifts[j] == withheld[j]);
            if (withheld[j] == 0)
                CHECK(trial.decoded_codes.codes[j] == trial.true_codes.codes[j]);
            else
                CHECK(trial.decoded_codes.codes[j] != trial.true_codes.codes[j]);
        }
        if (trial.uniform_residual_shift() == -1) saw_mixed = true;
    }
    CHECK(saw_mixed);
}

TEST_CASE("aggregate statistics summarize the right fields") {
    ScenarioConfig config = base_config();
    config.trials = 5;
    const auto report = run_trials(config, RunMode::Serial);
    CHECK(report.trials == 5);
    CHECK(report.qubits == 5 * config.m);
    CHECK(report.has_chsh);
    CHECK(report.has_qber);
    CHECK(report.chsh_min_abs > 2.3);
    CHECK(report.qber_max == 0.0);
    CHECK(report.per_trial.size() == 5);
    CHECK(report.stddev_fidelity < 1e-9);
}
