#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gdd::cli {

enum ExitCode : int {
    kOk = 0,
    kArgumentError = 2,
    kDomainError = 3,
    kNonConvergence = 4,
    kVerificationFailure = 5,
};

/// Runs one command line (without the program name). Records go to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdd::cli
