#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hartree::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kRuntimeError = 2,
    kAssertionFailed = 3,
};

/// Runs one hartree_lab invocation. `args` excludes the program name.
/// Progress goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string recorded in manifests.
const char* version();

}  // namespace hartree::cli
