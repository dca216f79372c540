// Command-line front end. Subcommands: predim, sstar, pressure, cover,
// witness, simulate, lemmas.
#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace shrinkdim::cli {

// Exit status: 0 success, 1 a property suite failed, 2 usage or module error,
// 3 unexpected internal error. Errors are written to err as JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a..b" or a single integer "a".
std::pair<int, int> parse_range(const std::string& text);

}  // namespace shrinkdim::cli
