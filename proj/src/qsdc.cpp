#include "qct/qsdc.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qct/error.hpp"
#include "qct/statevec.hpp"

namespace qct {
namespace qsdc {

namespace {

constexpr double kAngleZ = 0.0;
constexpr double kAngleX = 1.5707963267948966;

double basis_angle(Basis b) { return b == Basis::Z ? kAngleZ : kAngleX; }

StateVector prep_state(PhotonPrep prep) {
    if (prep.basis == Basis::Z)
        return prep.bit ? make_message_qubit(0.0, 1.0) : make_message_qubit(1.0, 0.0);
    return prep.bit ? make_message_qubit(1.0, -1.0) : make_message_qubit(1.0, 1.0);
}

void fisher_yates(std::vector<int>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(static_cast<std::uint32_t>(i))]);
}

} // namespace

QsdcSession run_session(const std::vector<std::uint8_t>& message_bits,
                        int batch_size, double check_fraction,
                        const EveModel& eve, Rng& rng, double qber_threshold) {
    if (batch_size < 1)
        fail(errc::validation_error, "QSDC batch size must be positive");
    if (!(check_fraction > 0.0 && check_fraction < 1.0))
        fail(errc::validation_error, "QSDC check fraction must lie in (0, 1)");

    const int forward_sample =
        static_cast<int>(std::lround(check_fraction * batch_size));
    const int remaining = batch_size - forward_sample;
    const int backward_sample =
        static_cast<int>(std::lround(check_fraction * remaining));
    const int slots = remaining - backward_sample;
    if (slots < static_cast<int>(message_bits.size()))
        fail(errc::batch_too_small,
             "batch of " + std::to_string(batch_size) + " leaves " +
                 std::to_string(slots) + " message slots, need " +
                 std::to_string(message_bits.size()));

    QsdcSession session;
    session.batch_size = batch_size;
    session.check_fraction = check_fraction;
    session.encoded_ops.assign(batch_size, 2);

    // Alice prepares the batch; Eve may intercept each photon in flight.
    std::vector<PhotonPrep> preps(batch_size);
    std::vector<StateVector> photons(batch_size);
    for (int i = 0; i < batch_size; ++i) {
        preps[i] = PhotonPrep{static_cast<Basis>(rng.bit()),
                              static_cast<std::uint8_t>(rng.bit())};
        photons[i] = prep_state(preps[i]);
        if (eve.active() && rng.uniform() < eve.intercept_probability) {
            const double angle = eve.basis_set[rng.below(
                static_cast<std::uint32_t>(eve.basis_set.size()))];
            auto [bit, collapsed] = measure_angle(photons[i], 0, angle, rng);
            photons[i] = std::move(collapsed);
            session.eve_positions.push_back(i);
            session.eve_bits.push_back(static_cast<std::uint8_t>(bit));
        }
    }

    // The agent partitions the batch: forward-check sample, backward-check
    // positions, then message slots in batch order.
    std::vector<int> order(batch_size);
    for (int i = 0; i < batch_size; ++i) order[i] = i;
    fisher_yates(order, rng);

    std::vector<int> forward_positions(order.begin(), order.begin() + forward_sample);
    std::vector<int> backward_positions(order.begin() + forward_sample,
                                        order.begin() + forward_sample + backward_sample);
    std::vector<int> rest(order.begin() + forward_sample + backward_sample, order.end());
    std::sort(rest.begin(), rest.end());
    session.message_positions.assign(rest.begin(),
                                     rest.begin() + message_bits.size());

    // Forward check: the agent measures the sample in random bases and the
    // conclusive (matching-basis) comparisons estimate the channel QBER.
    session.forward_check_photons = forward_sample;
    int conclusive = 0, forward_errors = 0;
    for (int pos : forward_positions) {
        const Basis agent_basis = static_cast<Basis>(rng.bit());
        auto [bit, collapsed] =
            measure_angle(photons[pos], 0, basis_angle(agent_basis), rng);
        if (agent_basis == preps[pos].basis) {
            ++conclusive;
            if (bit != preps[pos].bit) ++forward_errors;
        }
    }
    session.forward_conclusive = conclusive;
    session.qber_forward =
        conclusive == 0 ? 0.0
                        : static_cast<double>(forward_errors) / conclusive;

    // Encode and return the surviving photons.
    std::vector<std::uint8_t> backward_bits(backward_positions.size());
    for (std::size_t k = 0; k < backward_positions.size(); ++k) {
        backward_bits[k] = static_cast<std::uint8_t>(rng.bit());
        session.encoded_ops[backward_positions[k]] = backward_bits[k];
    }
    for (std::size_t k = 0; k < session.message_positions.size(); ++k)
        session.encoded_ops[session.message_positions[k]] = message_bits[k];
    for (std::size_t k = message_bits.size(); k < rest.size(); ++k)
        session.encoded_ops[rest[k]] = static_cast<std::uint8_t>(rng.bit());

    std::vector<std::uint8_t> decoded(batch_size, 0);
    for (int i = 0; i < batch_size; ++i) {
        if (session.encoded_ops[i] == 2) continue; // consumed by forward check
        if (session.encoded_ops[i] == 1) photons[i] = apply_gate(photons[i], kGateU3, 0);
        auto [bit, collapsed] =
            measure_angle(photons[i], 0, basis_angle(preps[i].basis), rng);
        decoded[i] = bit == preps[i].bit ? 0 : 1;
    }

    session.backward_check_photons = static_cast<int>(backward_positions.size());
    int backward_errors = 0;
    for (std::size_t k = 0; k < backward_positions.size(); ++k)
        if (decoded[backward_positions[k]] != backward_bits[k]) ++backward_errors;
    session.qber_backward =
        backward_positions.empty()
            ? 0.0
            : static_cast<double>(backward_errors) / backward_positions.size();

    session.decoded_bits.reserve(message_bits.size());
    for (int pos : session.message_positions)
        session.decoded_bits.push_back(decoded[pos]);

    session.compromised = session.qber_forward > qber_threshold ||
                          session.qber_backward > qber_threshold;
    return session;
}

std::pair<std::uint8_t, bool> control_bit_via_qsdc(std::uint8_t bit,
                                                   const QsdcConfig& config,
                                                   const EveModel& eve, Rng& rng) {
    bool saw_compromise = false;
    for (int attempt = 0; attempt <= config.retries; ++attempt) {
        QsdcSession session =
            run_session({bit}, config.batch_size, config.check_fraction, eve, rng,
                        config.qber_threshold);
        if (!session.compromised) return {session.decoded_bits.at(0), saw_compromise};
        saw_compromise = true;
    }
    fail(errc::retries_exhausted,
         "QSDC control-bit delivery still compromised after " +
             std::to_string(config.retries + 1) + " attempts");
}

} // namespace qsdc
} // namespace qct
