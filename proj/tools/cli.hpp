#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rpsp::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,
    kExitInvalid = 2,
    kExitNoExactAlgorithm = 3,
};

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rpsp::cli
