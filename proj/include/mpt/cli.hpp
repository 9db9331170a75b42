#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mpt/bench.hpp"

namespace mpt {

/// Malformed command-line input; maps to exit code 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "1,1e-6/1e-2" -> {{1}, {1e-6, 1e-2}}: one comma-separated entry per
/// network, '/' separating the values swept for that network.
std::vector<std::vector<double>> parse_k_list(const std::string& text, std::size_t j_count);

/// "1-2=1e4/1e6,1-3=1" -> pair list (0-based indices). Offending tokens are
/// named in the UsageError message.
std::vector<XiPairValues> parse_xi_list(const std::string& text, std::size_t j_count);

std::vector<int> parse_n_list(const std::string& text);

/// Subcommands: solve, sweep, oracle, plot. Returns 0 on success, 1 on usage
/// errors and 2 on I/O errors.
int cli_main(int argc, char** argv);
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpt
