#pragma once

#include <vector>

namespace qct {

// Adversary on a quantum channel. InterceptResend measures each flying
// qubit (with the given probability) at an analyzer angle drawn uniformly
// from basis_set and forwards the collapsed eigenstate. The default basis
// set {0, pi/2} is the Z/X conjugate pair; angles use the same half-angle
// analyzer convention as measure_angle.
struct EveModel {
    enum class Strategy { None, InterceptResend };

    Strategy strategy = Strategy::None;
    std::vector<double> basis_set{0.0, 1.5707963267948966};
    double intercept_probability = 1.0;

    bool active() const { return strategy == Strategy::InterceptResend; }
};

} // namespace qct
