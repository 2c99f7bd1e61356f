#pragma once

#include <stdexcept>
#include <string>

namespace advrob {

enum class ErrorKind {
    invalid_input,
    dimension_mismatch,
    bracket,
    format,
    unsupported_method,
    trivial_classifier,
    attack_failure,
    numerical,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::format: return "format";
    case ErrorKind::unsupported_method: return "unsupported-method";
    case ErrorKind::trivial_classifier: return "trivial-classifier";
    case ErrorKind::attack_failure: return "attack-failure";
    case ErrorKind::numerical: return "numerical";
    }
    return "unknown";
}

/// Single exception type for the library; `kind()` tells callers (and the CLI
/// exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const char* what) {
    if (!cond)
        throw Error(kind, what);
}

} // namespace advrob
