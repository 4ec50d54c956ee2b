#include "qct/statevec.hpp"

#include <cmath>
#include <cstddef>

#include "qct/error.hpp"

namespace qct {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_target(const StateVector& state, int target) {
    if (target < 0 || target >= state.num_qubits)
        fail(errc::index_out_of_range,
             "qubit index " + std::to_string(target) + " out of range for " +
                 std::to_string(state.num_qubits) + "-qubit register");
}

} // namespace

std::string to_string(BellOutcome outcome) {
    switch (outcome) {
        case BellOutcome::PhiPlus: return "phi+";
        case BellOutcome::PhiMinus: return "phi-";
        case BellOutcome::PsiPlus: return "psi+";
        case BellOutcome::PsiMinus: return "psi-";
    }
    return "?";
}

StateVector StateVector::basis_state(int num_qubits, std::size_t index) {
    StateVector s;
    s.num_qubits = num_qubits;
    s.amps.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    s.amps.at(index) = Amplitude{1.0, 0.0};
    return s;
}

double StateVector::squared_norm() const {
    double total = 0.0;
    for (const auto& a : amps) total += std::norm(a);
    return total;
}

bool SingleQubitGate::is_unitary(double tol) const {
    // Columns of the matrix must be orthonormal.
    const double c0 = std::norm(m00) + std::norm(m10);
    const double c1 = std::norm(m01) + std::norm(m11);
    const Amplitude cross = std::conj(m00) * m01 + std::conj(m10) * m11;
    return std::abs(c0 - 1.0) <= tol && std::abs(c1 - 1.0) <= tol &&
           std::abs(cross) <= tol;
}

const SingleQubitGate kGateIdentity{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
const SingleQubitGate kGateU1{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
const SingleQubitGate kGateU2{{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
const SingleQubitGate kGateU3{{0, 0}, {1, 0}, {-1, 0}, {0, 0}};

StateVector make_message_qubit(Amplitude alpha, Amplitude beta) {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        fail(errc::zero_vector, "message qubit amplitudes must not both be zero");
    const double inv = 1.0 / std::sqrt(norm2);
    StateVector s;
    s.num_qubits = 1;
    s.amps = {alpha * inv, beta * inv};
    return s;
}

StateVector make_bell_pair(BellOutcome kind) {
    StateVector s;
    s.num_qubits = 2;
    s.amps.assign(4, Amplitude{0.0, 0.0});
    switch (kind) {
        case BellOutcome::PhiPlus:
            s.amps[0b00] = kInvSqrt2;
            s.amps[0b11] = kInvSqrt2;
            break;
        case BellOutcome::PhiMinus:
            s.amps[0b00] = kInvSqrt2;
            s.amps[0b11] = -kInvSqrt2;
            break;
        case BellOutcome::PsiPlus:
            s.amps[0b01] = kInvSqrt2;
            s.amps[0b10] = kInvSqrt2;
            break;
        case BellOutcome::PsiMinus:
            s.amps[0b01] = kInvSqrt2;
            s.amps[0b10] = -kInvSqrt2;
            break;
    }
    return s;
}

StateVector tensor(const StateVector& a, const StateVector& b, int max_qubits) {
    const int total = a.num_qubits + b.num_qubits;
    if (total > max_qubits)
        fail(errc::capacity_exceeded,
             "tensor product would need " + std::to_string(total) +
                 " qubits, limit is " + std::to_string(max_qubits));
    StateVector out;
    out.num_qubits = total;
    out.amps.resize(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out.amps[i * b.dim() + j] = a.amps[i] * b.amps[j];
    return out;
}

StateVector apply_gate(const StateVector& state, const SingleQubitGate& gate, int target) {
    check_target(state, target);
    StateVector out = state;
    const std::size_t bit = std::size_t{1} << (state.num_qubits - 1 - target);
    for (std::size_t i = 0; i < out.dim(); ++i) {
        if (i & bit) continue;
        const std::size_t j = i | bit;
        const Amplitude a0 = out.amps[i];
        const Amplitude a1 = out.amps[j];
        out.amps[i] = gate.m00 * a0 + gate.m01 * a1;
        out.amps[j] = gate.m10 * a0 + gate.m11 * a1;
    }
    return out;
}

std::pair<int, StateVector> measure_angle(const StateVector& state, int target,
                                          double theta, Rng& rng) {
    check_target(state, target);
    if (!std::isfinite(theta))
        fail(errc::validation_error, "analyzer angle must be finite");

    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::size_t bit = std::size_t{1} << (state.num_qubits - 1 - target);

    // Rotate each (|0>, |1>) amplitude pair into the analyzer basis.
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & bit) continue;
        const Amplitude lo = state.amps[i];
        const Amplitude hi = state.amps[i | bit];
        p0 += std::norm(c * lo + s * hi);
        p1 += std::norm(-s * lo + c * hi);
    }
    const double total = p0 + p1;
    if (total < kDegenerateMass)
        fail(errc::degenerate_state, "measurement on a zero-mass state");

    const int outcome = rng.uniform() * total < p0 ? 0 : 1;
    const double mass = outcome == 0 ? p0 : p1;
    const double inv = 1.0 / std::sqrt(mass);

    StateVector out = state;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        if (i & bit) continue;
        const std::size_t j = i | bit;
        const Amplitude lo = state.amps[i];
        const Amplitude hi = state.amps[j];
        if (outcome == 0) {
            const Amplitude proj = (c * lo + s * hi) * inv;
            out.amps[i] = proj * c;
            out.amps[j] = proj * s;
        } else {
            const Amplitude proj = (-s * lo + c * hi) * inv;
            out.amps[i] = proj * -s;
            out.amps[j] = proj * c;
        }
    }
    return {outcome, std::move(out)};
}

namespace {

struct BellDecomposition {
    // Per rest-index coefficient of each Bell component on the pair.
    std::array<std::vector<Amplitude>, 4> coef;
    std::array<double, 4> prob{};
};

void check_pair(const StateVector& state, int q1, int q2) {
    check_target(state, q1);
    check_target(state, q2);
    if (q1 == q2)
        fail(errc::index_out_of_range, "Bell measurement needs two distinct qubits");
}

// Decompose the register over the Bell basis of the pair (q1, q2):
// for each configuration r of the remaining qubits, project the four pair
// amplitudes onto phi+/phi-/psi+/psi-.
BellDecomposition bell_decompose(const StateVector& state, int q1, int q2) {
    const int n = state.num_qubits;
    const std::size_t rest_dim = std::size_t{1} << (n - 2);

    BellDecomposition d;
    for (auto& v : d.coef) v.assign(rest_dim, Amplitude{0.0, 0.0});

    std::array<std::vector<Amplitude>, 4> pair_amp;
    for (auto& v : pair_amp) v.assign(rest_dim, Amplitude{0.0, 0.0});

    for (std::size_t i = 0; i < state.dim(); ++i) {
        const int b1 = state.qubit_bit(i, q1);
        const int b2 = state.qubit_bit(i, q2);
        std::size_t rest = 0;
        for (int q = 0; q < n; ++q) {
            if (q == q1 || q == q2) continue;
            rest = (rest << 1) | static_cast<std::size_t>(state.qubit_bit(i, q));
        }
        pair_amp[(b1 << 1) | b2][rest] = state.amps[i];
    }

    for (std::size_t r = 0; r < rest_dim; ++r) {
        const Amplitude a00 = pair_amp[0][r];
        const Amplitude a01 = pair_amp[1][r];
        const Amplitude a10 = pair_amp[2][r];
        const Amplitude a11 = pair_amp[3][r];
        d.coef[0][r] = (a00 + a11) * kInvSqrt2; // phi+
        d.coef[1][r] = (a00 - a11) * kInvSqrt2; // phi-
        d.coef[2][r] = (a01 + a10) * kInvSqrt2; // psi+
        d.coef[3][r] = (a01 - a10) * kInvSqrt2; // psi-
    }
    for (int k = 0; k < 4; ++k) {
        double p = 0.0;
        for (const auto& c : d.coef[k]) p += std::norm(c);
        d.prob[k] = p;
    }
    return d;
}

int sample_outcome(const BellDecomposition& d, Rng& rng) {
    const double total = d.prob[0] + d.prob[1] + d.prob[2] + d.prob[3];
    if (total < kDegenerateMass)
        fail(errc::degenerate_state, "Bell projector mass below tolerance");
    const double u = rng.uniform() * total;
    double cum = 0.0;
    for (int k = 0; k < 3; ++k) {
        cum += d.prob[k];
        if (u < cum) return k;
    }
    return 3;
}

} // namespace

std::array<double, 4> bell_probabilities(const StateVector& state, int q1, int q2) {
    check_pair(state, q1, q2);
    auto d = bell_decompose(state, q1, q2);
    const double total = d.prob[0] + d.prob[1] + d.prob[2] + d.prob[3];
    if (total < kDegenerateMass)
        fail(errc::degenerate_state, "Bell projector mass below tolerance");
    for (auto& p : d.prob) p /= total;
    return d.prob;
}

std::pair<BellOutcome, StateVector> bell_measure(const StateVector& state,
                                                 int q1, int q2, Rng& rng) {
    check_pair(state, q1, q2);
    const auto d = bell_decompose(state, q1, q2);
    const int k = sample_outcome(d, rng);

    StateVector out;
    out.num_qubits = state.num_qubits - 2;
    const double inv = 1.0 / std::sqrt(d.prob[k]);
    out.amps.resize(std::size_t{1} << out.num_qubits);
    for (std::size_t r = 0; r < out.dim(); ++r) out.amps[r] = d.coef[k][r] * inv;
    return {static_cast<BellOutcome>(k), std::move(out)};
}

std::pair<BellOutcome, StateVector> bell_measure_in_place(const StateVector& state,
                                                          int q1, int q2, Rng& rng) {
    check_pair(state, q1, q2);
    const auto d = bell_decompose(state, q1, q2);
    const int k = sample_outcome(d, rng);
    const double inv = 1.0 / std::sqrt(d.prob[k]);

    // Bell vector components on the (q1, q2) pair, MSB = q1.
    static constexpr int kPairIndex[4][2] = {
        {0b00, 0b11}, {0b00, 0b11}, {0b01, 0b10}, {0b01, 0b10}};
    static constexpr double kPairSign[4][2] = {
        {1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}, {1.0, -1.0}};

    const int n = state.num_qubits;
    StateVector out = state;
    for (auto& a : out.amps) a = Amplitude{0.0, 0.0};

    const std::size_t rest_dim = std::size_t{1} << (n - 2);
    for (std::size_t r = 0; r < rest_dim; ++r) {
        const Amplitude c = d.coef[k][r] * inv;
        for (int part = 0; part < 2; ++part) {
            // Scatter the rest bits back around positions q1, q2.
            std::size_t index = 0;
            std::size_t rbits = r;
            for (int q = n - 1; q >= 0; --q) {
                if (q == q1 || q == q2) continue;
                if (rbits & 1) index |= std::size_t{1} << (n - 1 - q);
                rbits >>= 1;
            }
            const int pair = kPairIndex[k][part];
            if (pair & 0b10) index |= std::size_t{1} << (n - 1 - q1);
            if (pair & 0b01) index |= std::size_t{1} << (n - 1 - q2);
            out.amps[index] = c * (kPairSign[k][part] * kInvSqrt2);
        }
    }
    return {static_cast<BellOutcome>(k), std::move(out)};
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits != b.num_qubits)
        fail(errc::dimension_mismatch, "inner product of different-size registers");
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

} // namespace qct
