#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsketch {

enum class ErrorKind {
    ShapeMismatch,
    ImaginaryResidual,
    SvdNoConvergence,
    IndexOutOfRange,
    InvalidParams,
    ZeroReference,
    Breakdown,
    Format,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI, the benchmark runner) can map it to an exit code or a
/// status cell without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tsketch
