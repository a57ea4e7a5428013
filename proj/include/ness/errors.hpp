#pragma once

#include <stdexcept>
#include <string>

namespace ness {

/// Error taxonomy shared by every module. The CLI maps each kind onto a
/// distinct process exit code (see exit_code()).
enum class ErrorKind {
    structural_input,   ///< matrix violates a structural invariant
    pure_direction,     ///< eigenvalue of C touches +-1 where a mixed state is required
    non_unique_steady,  ///< gap is zero, steady state not unique
    convergence,        ///< residual or tolerance certification failed
    size_cap,           ///< problem exceeds a hard size cap
    domain,             ///< argument outside the mathematical domain
    stability,          ///< X has eigenvalues with negative real part
    singular_momentum,  ///< analytic ring formula hit a gapless momentum
    config,             ///< configuration parsing or validation
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit code for an error kind: 2 config, 3 non-unique NESS,
/// 4 numerical tolerance, 5 size cap, 6 invalid model input.
int exit_code(ErrorKind kind);

}  // namespace ness
