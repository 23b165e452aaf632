#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rpsp {

enum class ErrorKind {
    InvalidSelection,
    InvalidInstance,
    Mode,
    SizeLimit,
    InfeasibleConfig,
    Shape,
    Laminarity,
    DuplicateSet,
    Decomposition,
    Structural,
    Parse,
    Solver,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to a stable exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace rpsp
