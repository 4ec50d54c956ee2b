#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qct/announce.hpp"
#include "qct/ekert91.hpp"
#include "qct/eve.hpp"
#include "qct/qsdc.hpp"
#include "qct/rng.hpp"
#include "qct/teleport.hpp"

namespace qct {

enum class Protocol { Ekert91, Qsdc };
enum class KeyMode { SingleBit, PerQubit };
enum class InputMode { HaarRandom, Fixed };

std::string to_string(Protocol p);
std::string to_string(KeyMode m);

struct AgentSpec {
    std::string id;
    Protocol protocol;
};

struct EkertConfig {
    int pairs = 2000;
    double chsh_threshold = e91::kDefaultChshThreshold;
    int retries = 3;
};

struct ScenarioConfig {
    int m = 1;
    std::vector<AgentSpec> agents;
    std::vector<std::string> collaborators; // subset of agent ids
    KeyMode key_mode = KeyMode::SingleBit;
    int trials = 1;
    std::uint64_t master_seed = 0;
    InputMode input_mode = InputMode::HaarRandom;
    std::vector<MessageQubitSpec> fixed_inputs; // length m when Fixed
    EveModel ekert_eve;
    EveModel qsdc_eve;
    bool classical_eavesdropper = false; // read-only observer, never affects results
    EkertConfig ekert;
    qsdc::QsdcConfig qsdc;
};

// Checks the cross-field invariants (collaborators known, fixed inputs
// sized, positive counts...). Throws validation_error.
void validate(const ScenarioConfig& config);

// Per-agent key-establishment summary, serialized into reports.
struct KeySummary {
    Protocol protocol = Protocol::Ekert91;
    int attempts = 1;         // sessions run including retries
    bool compromised = false; // flag of the delivering session
    // Ekert91 fields
    int pairs = 0;
    int sifted_len = 0;
    double agreement = 0.0;
    double chsh_s = 0.0;
    // QSDC fields
    int batch = 0;
    double qber_forward = 0.0;
    double qber_backward = 0.0;
};

// Alice's copy is what she encrypts with; the agent's copy is what he
// reveals when he collaborates. They coincide unless an undetected
// eavesdropper corrupted the key channel.
struct EstablishedKey {
    AgentKey alice;
    AgentKey agent;
    KeySummary summary;
};

// Public authenticated broadcast channel: everyone (including Eve) can
// read, nobody can modify.
struct ClassicalChannel {
    std::vector<std::string> log;

    void broadcast(std::string message) { log.push_back(std::move(message)); }
};

struct TrialReport {
    int trial_index = 0;
    std::vector<double> fidelities; // per message qubit
    double mean_fidelity = 0.0;
    double min_fidelity = 0.0;
    Announcement true_codes;
    Announcement announced_codes;
    Announcement decoded_codes;
    std::vector<std::uint8_t> residual_shifts; // (decoded - true) mod 4, per position
    std::vector<std::uint8_t> revealed_shifts; // revealed key sum mod 4, per position
    std::map<std::string, std::vector<std::uint8_t>> agent_key_bits; // Alice's copies
    std::map<std::string, KeySummary> key_summaries;
    int key_retries = 0; // compromised sessions re-run during establishment
    int classical_messages = 0;

    // The common per-position value, or -1 when positions differ
    // (possible only with per-qubit keys).
    int uniform_residual_shift() const;
    int uniform_revealed_shift() const;
};

struct AggregateReport {
    int trials = 0;
    long long qubits = 0;
    double mean_fidelity = 0.0;
    double stddev_fidelity = 0.0;
    double min_fidelity = 0.0;
    int trials_with_residual = 0; // trials whose residual shift is nonzero somewhere
    int key_retries = 0;
    bool has_chsh = false;
    double chsh_min_abs = 0.0; // across all Ekert91 summaries
    bool has_qber = false;
    double qber_max = 0.0; // across all QSDC summaries
    std::vector<TrialReport> per_trial;
};

// Runs key establishment for every agent in declaration order. Both sides
// of each key are recorded; compromised sessions are retried per the
// subprotocol budgets.
std::map<std::string, EstablishedKey> establish_keys(const ScenarioConfig& config,
                                                     Rng& rng);

// One end-to-end trial: keys, message sampling, per-qubit teleportation,
// encrypted announcement, partial reveal by the collaborators, Bob's
// decode + correction, fidelity accounting. Deterministic given
// (config, trial_index).
TrialReport run_trial(const ScenarioConfig& config, int trial_index);

enum class RunMode { Serial, Parallel };

// Trial batch runner. Serial is the reference implementation; Parallel
// fans trials out across OpenMP threads. Both produce bit-identical
// aggregates because every trial derives its own seed and the merge walks
// trials in index order.
AggregateReport run_trials(const ScenarioConfig& config,
                           RunMode mode = RunMode::Parallel);

} // namespace qct
