#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qct/eve.hpp"
#include "qct/rng.hpp"

namespace qct {
namespace qsdc {

// Photon preparation: Z basis holds |0>/|1>, X basis holds |+>/|->. In
// analyzer-angle terms Z is angle 0 and X is angle pi/2.
enum class Basis : std::uint8_t { Z = 0, X = 1 };

struct PhotonPrep {
    Basis basis;
    std::uint8_t bit;
};

// Message encoding on a returned photon. Flip is u3 = |0><1| - |1><0|,
// which swaps the two states of either basis up to a global sign, so the
// receiver decodes it in the preparation basis without ever learning which
// basis Eve saw.
enum class EncodeOp : std::uint8_t { Pass = 0, Flip = 1 };

struct QsdcConfig {
    int batch_size = 512;
    double check_fraction = 0.25;
    double qber_threshold = 0.05;
    int retries = 3;
};

struct QsdcSession {
    int batch_size = 0;
    double check_fraction = 0.0;
    double qber_forward = 0.0;
    double qber_backward = 0.0;
    std::vector<std::uint8_t> decoded_bits;
    bool compromised = false;

    // Diagnostics for tests and reports.
    int forward_check_photons = 0;
    int forward_conclusive = 0;
    int backward_check_photons = 0;
    std::vector<int> eve_positions;          // batch indices Eve touched
    std::vector<std::uint8_t> eve_bits;      // her measured bits there
    std::vector<int> message_positions;      // batch indices carrying the message
    std::vector<std::uint8_t> encoded_ops;   // per batch index; 2 = consumed by check
};

// One two-leg batch round: Alice prepares random photons and sends them to
// the agent; a random sample is sacrificed to estimate the forward QBER; the
// agent encodes Pass/Flip on the survivors (message bits on designated
// positions, known random bits on backward-check positions) and returns
// them; Alice measures in the preparation bases, decodes, and estimates the
// backward QBER from the known bits. Either QBER above `qber_threshold`
// flags the session compromised.
QsdcSession run_session(const std::vector<std::uint8_t>& message_bits,
                        int batch_size, double check_fraction,
                        const EveModel& eve, Rng& rng,
                        double qber_threshold = 0.05);

// Delivers one control bit to Alice, retrying with a fresh batch when a
// session is flagged. Returns the delivered bit plus whether any attempt was
// compromised along the way; throws retries_exhausted once the budget is
// spent.
std::pair<std::uint8_t, bool> control_bit_via_qsdc(std::uint8_t bit,
                                                   const QsdcConfig& config,
                                                   const EveModel& eve, Rng& rng);

} // namespace qsdc
} // namespace qct
