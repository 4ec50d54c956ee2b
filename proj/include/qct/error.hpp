#pragma once

#include <stdexcept>
#include <string>

namespace qct {

// Error categories reported by the simulator. The CLI maps these to exit
// codes: parse/validation -> 2, retries_exhausted -> 3, everything else -> 1.
enum class errc {
    zero_vector,
    capacity_exceeded,
    index_out_of_range,
    degenerate_state,
    dimension_mismatch,
    key_length_mismatch,
    insufficient_samples,
    batch_too_small,
    retries_exhausted,
    parse_error,
    validation_error,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace qct
