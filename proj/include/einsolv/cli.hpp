#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace einsolv::cli {

/// Runs one subcommand. Reports go to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 1 check failure, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace einsolv::cli
