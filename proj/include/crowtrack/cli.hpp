#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crowtrack {

/// Entry point of the crowtrack command line (subcommands track, evaluate,
/// synth, cogtable). Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crowtrack
