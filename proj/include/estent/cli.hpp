#ifndef ESTENT_CLI_HPP
#define ESTENT_CLI_HPP

#include <string>
#include <vector>

namespace estent {

// Command-line front end. Exit codes: 0 success/feasible, 2 infeasible,
// 64 config or usage error, 1 other failures.
int run_cli(const std::vector<std::string>& args);

}  // namespace estent

#endif
