#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace psipoint {

/// Runs one command line (without the program name). Documents go to `out`
/// or to --out PATH, diagnostics to `err`.
///
/// Exit codes: 0 success, 1 usage or parse error, 2 internal consistency
/// failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psipoint
