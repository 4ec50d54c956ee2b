#include "qct/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>

#include "qct/error.hpp"
#include "qct/statevec.hpp"

namespace qct {

std::string to_string(Protocol p) {
    return p == Protocol::Ekert91 ? "ekert91" : "qsdc";
}

std::string to_string(KeyMode m) {
    return m == KeyMode::SingleBit ? "single_bit" : "per_qubit";
}

void validate(const ScenarioConfig& config) {
    if (config.m < 1)
        fail(errc::validation_error, "m must be at least 1");
    if (config.m > kDefaultMaxBatch)
        fail(errc::validation_error,
             "m must not exceed " + std::to_string(kDefaultMaxBatch));
    if (config.trials < 1)
        fail(errc::validation_error, "trials must be at least 1");

    std::set<std::string> ids;
    for (const auto& agent : config.agents) {
        if (agent.id.empty())
            fail(errc::validation_error, "agent ids must be non-empty");
        if (!ids.insert(agent.id).second)
            fail(errc::validation_error, "duplicate agent id '" + agent.id + "'");
    }
    for (const auto& id : config.collaborators)
        if (!ids.count(id))
            fail(errc::validation_error,
                 "collaborator '" + id + "' is not a declared agent");

    if (config.input_mode == InputMode::Fixed &&
        static_cast<int>(config.fixed_inputs.size()) != config.m)
        fail(errc::validation_error,
             "fixed input list has " + std::to_string(config.fixed_inputs.size()) +
                 " entries, expected m = " + std::to_string(config.m));

    if (config.ekert.pairs < 1)
        fail(errc::validation_error, "ekert.pairs must be positive");
    if (config.ekert.retries < 0 || config.qsdc.retries < 0)
        fail(errc::validation_error, "retry budgets must be non-negative");
    if (config.qsdc.batch_size < 1)
        fail(errc::validation_error, "qsdc.batch must be positive");
    if (!(config.qsdc.check_fraction > 0.0 && config.qsdc.check_fraction < 1.0))
        fail(errc::validation_error, "qsdc.check_fraction must lie in (0, 1)");

    for (const auto* eve : {&config.ekert_eve, &config.qsdc_eve}) {
        if (eve->intercept_probability < 0.0 || eve->intercept_probability > 1.0)
            fail(errc::validation_error, "eve probability must lie in [0, 1]");
        if (eve->active() && eve->basis_set.empty())
            fail(errc::validation_error, "an active eavesdropper needs a basis set");
    }
}

namespace {

int bits_needed(const ScenarioConfig& config) {
    return config.key_mode == KeyMode::SingleBit ? 1 : config.m;
}

// Ekert91 key establishment: run sessions until one passes the Bell test
// with enough sifted bits. Alice keeps her raw sifted bits, the agent keeps
// his reconciled (inverted) bits.
EstablishedKey establish_ekert(const ScenarioConfig& config, const AgentSpec& agent,
                               int needed, Rng& rng) {
    EstablishedKey out;
    out.summary.protocol = Protocol::Ekert91;
    out.summary.pairs = config.ekert.pairs;

    for (int attempt = 0; attempt <= config.ekert.retries; ++attempt) {
        out.summary.attempts = attempt + 1;
        e91::E91Session session = e91::run_session(config.ekert.pairs, config.ekert_eve,
                                                   rng, config.ekert.chsh_threshold);
        const bool usable = !session.compromised &&
                            static_cast<int>(session.sifted_key.size()) >= needed;
        if (!usable) continue;

        out.summary.sifted_len = static_cast<int>(session.sifted_key.size());
        out.summary.agreement = session.agreement;
        out.summary.chsh_s = session.chsh_s;
        out.summary.compromised = session.compromised;

        out.alice.agent_id = agent.id;
        out.agent.agent_id = agent.id;
        int taken = 0;
        for (const auto& rec : session.records) {
            if (rec.alice_angle != rec.agent_angle) continue;
            out.alice.bits.push_back(rec.alice_bit);
            out.agent.bits.push_back(static_cast<std::uint8_t>(1 - rec.agent_bit));
            if (++taken == needed) break;
        }
        return out;
    }
    fail(errc::retries_exhausted,
         "Ekert91 key establishment for agent '" + agent.id + "' failed " +
             std::to_string(config.ekert.retries + 1) + " sessions in a row");
}

// QSDC key establishment: the agent draws random control bits and transmits
// them directly. His intended bits are his copy; Alice's decode is hers.
EstablishedKey establish_qsdc(const ScenarioConfig& config, const AgentSpec& agent,
                              int needed, Rng& rng) {
    EstablishedKey out;
    out.summary.protocol = Protocol::Qsdc;
    out.summary.batch = config.qsdc.batch_size;

    std::vector<std::uint8_t> intended(needed);
    for (auto& b : intended) b = static_cast<std::uint8_t>(rng.bit());

    for (int attempt = 0; attempt <= config.qsdc.retries; ++attempt) {
        out.summary.attempts = attempt + 1;
        qsdc::QsdcSession session = qsdc::run_session(
            intended, config.qsdc.batch_size, config.qsdc.check_fraction,
            config.qsdc_eve, rng, config.qsdc.qber_threshold);
        if (session.compromised) continue;

        out.summary.qber_forward = session.qber_forward;
        out.summary.qber_backward = session.qber_backward;
        out.summary.compromised = session.compromised;
        out.alice = AgentKey{agent.id, session.decoded_bits};
        out.agent = AgentKey{agent.id, intended};
        return out;
    }
    fail(errc::retries_exhausted,
         "QSDC key establishment for agent '" + agent.id + "' failed " +
             std::to_string(config.qsdc.retries + 1) + " sessions in a row");
}

} // namespace

std::map<std::string, EstablishedKey> establish_keys(const ScenarioConfig& config,
                                                     Rng& rng) {
    const int needed = bits_needed(config);
    std::map<std::string, EstablishedKey> keys;
    for (const auto& agent : config.agents) {
        keys[agent.id] = agent.protocol == Protocol::Ekert91
                             ? establish_ekert(config, agent, needed, rng)
                             : establish_qsdc(config, agent, needed, rng);
    }
    return keys;
}

int TrialReport::uniform_residual_shift() const {
    if (residual_shifts.empty()) return 0;
    for (auto s : residual_shifts)
        if (s != residual_shifts.front()) return -1;
    return residual_shifts.front();
}

int TrialReport::uniform_revealed_shift() const {
    if (revealed_shifts.empty()) return 0;
    for (auto s : revealed_shifts)
        if (s != revealed_shifts.front()) return -1;
    return revealed_shifts.front();
}

TrialReport run_trial(const ScenarioConfig& config, int trial_index) {
    validate(config);
    Rng rng(trial_seed(config.master_seed, static_cast<std::uint64_t>(trial_index)));

    TrialReport report;
    report.trial_index = trial_index;

    auto keys = establish_keys(config, rng);
    for (const auto& [id, key] : keys) {
        report.agent_key_bits[id] = key.alice.bits;
        report.key_summaries[id] = key.summary;
        report.key_retries += key.summary.attempts - 1;
    }

    std::vector<MessageQubitSpec> specs;
    specs.reserve(config.m);
    if (config.input_mode == InputMode::Fixed) {
        specs = config.fixed_inputs;
    } else {
        for (int i = 0; i < config.m; ++i) specs.push_back(haar_random_spec(rng));
    }

    auto records = teleport_batch(specs, rng);

    report.true_codes.codes.reserve(config.m);
    for (const auto& rec : records)
        report.true_codes.codes.push_back(encode(rec.outcome));

    // Alice encrypts with every agent's key (her copies) and broadcasts.
    ClassicalChannel channel;
    std::vector<AgentKey> all_keys;
    for (const auto& agent : config.agents) all_keys.push_back(keys[agent.id].alice);
    report.announced_codes = encrypt(report.true_codes, all_keys);
    channel.broadcast("announce " + to_string(report.announced_codes));

    // Collaborating agents reveal their copies to Bob over the same channel.
    std::vector<AgentKey> revealed;
    for (const auto& agent : config.agents) {
        if (std::find(config.collaborators.begin(), config.collaborators.end(),
                      agent.id) == config.collaborators.end())
            continue;
        revealed.push_back(keys[agent.id].agent);
        channel.broadcast("reveal " + agent.id);
    }

    if (config.classical_eavesdropper) {
        // Eve reads the public log; nothing downstream may depend on this.
        std::size_t observed = 0;
        for (const auto& message : channel.log) observed += message.size();
        (void)observed;
    }
    report.classical_messages = static_cast<int>(channel.log.size());

    report.decoded_codes = decrypt(report.announced_codes, revealed);
    for (int j = 0; j < config.m; ++j) {
        const int residual =
            (report.decoded_codes.codes[j] - report.true_codes.codes[j] + 4) % 4;
        report.residual_shifts.push_back(static_cast<std::uint8_t>(residual));
        report.revealed_shifts.push_back(static_cast<std::uint8_t>(
            net_shift(revealed, static_cast<std::size_t>(j), config.m)));
    }

    const auto corrections = corrections_from(report.decoded_codes);
    report.fidelities.reserve(config.m);
    double sum = 0.0, min_f = 1.0;
    for (int j = 0; j < config.m; ++j) {
        const StateVector corrected = apply_correction(records[j], corrections[j]);
        const double f = fidelity(corrected, specs[j].state());
        report.fidelities.push_back(f);
        sum += f;
        min_f = std::min(min_f, f);
    }
    report.mean_fidelity = sum / config.m;
    report.min_fidelity = min_f;
    return report;
}

namespace {

AggregateReport aggregate(std::vector<TrialReport> trials) {
    AggregateReport agg;
    agg.trials = static_cast<int>(trials.size());

    double sum = 0.0;
    agg.min_fidelity = 1.0;
    agg.chsh_min_abs = 1e300;
    for (const auto& trial : trials) {
        for (double f : trial.fidelities) {
            sum += f;
            agg.min_fidelity = std::min(agg.min_fidelity, f);
            ++agg.qubits;
        }
        if (trial.uniform_residual_shift() != 0) ++agg.trials_with_residual;
        agg.key_retries += trial.key_retries;
        for (const auto& [id, summary] : trial.key_summaries) {
            if (summary.protocol == Protocol::Ekert91) {
                agg.has_chsh = true;
                agg.chsh_min_abs = std::min(agg.chsh_min_abs, std::abs(summary.chsh_s));
            } else {
                agg.has_qber = true;
                agg.qber_max = std::max(
                    agg.qber_max, std::max(summary.qber_forward, summary.qber_backward));
            }
        }
    }
    if (agg.qubits > 0) {
        agg.mean_fidelity = sum / static_cast<double>(agg.qubits);
        double sq_dev = 0.0;
        for (const auto& trial : trials)
            for (double f : trial.fidelities) {
                const double d = f - agg.mean_fidelity;
                sq_dev += d * d;
            }
        agg.stddev_fidelity = std::sqrt(sq_dev / static_cast<double>(agg.qubits));
    }
    if (!agg.has_chsh) agg.chsh_min_abs = 0.0;
    agg.per_trial = std::move(trials);
    return agg;
}

} // namespace

AggregateReport run_trials(const ScenarioConfig& config, RunMode mode) {
    validate(config);
    std::vector<TrialReport> trials(config.trials);

    if (mode == RunMode::Parallel) {
        std::vector<std::exception_ptr> errors(config.trials);
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < config.trials; ++t) {
            try {
                trials[t] = run_trial(config, t);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
        for (int t = 0; t < config.trials; ++t)
            if (errors[t]) std::rethrow_exception(errors[t]);
    } else {
        for (int t = 0; t < config.trials; ++t) trials[t] = run_trial(config, t);
    }
    return aggregate(std::move(trials));
}

} // namespace qct
