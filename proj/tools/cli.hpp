#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace darboux::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kEnvironment = 3,
};

// args excludes the program name. Reports and data go to `out` unless -o is
// given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "5,10,20" or ranges "5:60:5" / "1:30" (inclusive), mixed with commas.
std::vector<int> parse_n_list(const std::string& text);

}  // namespace darboux::cli
