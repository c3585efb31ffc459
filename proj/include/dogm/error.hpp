#pragma once

#include <stdexcept>
#include <string>

namespace dogm {

/* Error taxonomy mirrored by the CLI exit codes:
 * ConfigError -> 2, DataError -> 3, NumericError -> 4. */

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Caller broke a documented precondition. */
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/* Window or offset outside the addressed grid. */
struct RangeError : ContractViolation {
    using ContractViolation::ContractViolation;
};

} // namespace dogm
