#pragma once

#include <stdexcept>

namespace tomo {

// bad user-facing configuration (labels, sizes, flags)
struct InvalidConfig : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a density matrix or sample set violates its invariants
struct InvariantViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// samples do not sit on the grid they declare, or the grid is not exact
struct GridMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tomo
