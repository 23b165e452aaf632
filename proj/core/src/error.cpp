#include "rpsp/error.hpp"

namespace rpsp {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidSelection: return "invalid-selection";
        case ErrorKind::InvalidInstance: return "invalid-instance";
        case ErrorKind::Mode: return "mode";
        case ErrorKind::SizeLimit: return "size-limit";
        case ErrorKind::InfeasibleConfig: return "infeasible-config";
        case ErrorKind::Shape: return "shape";
        case ErrorKind::Laminarity: return "laminarity";
        case ErrorKind::DuplicateSet: return "duplicate-set";
        case ErrorKind::Decomposition: return "decomposition";
        case ErrorKind::Structural: return "structural";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Solver: return "solver";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

}  // namespace rpsp
