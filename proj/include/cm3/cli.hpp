#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cm3 {

// Exit codes: 0 success, 1 usage or input error, 2 verification failure
// (failed identity trials, refused branch decisions).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Command table entry: which library operations a command exercises.  Every
// public operation is reachable from exactly one command (tested).
struct CommandCoverage {
  std::string command;
  std::vector<std::string> operations;
};
const std::vector<CommandCoverage>& command_coverage();

}  // namespace cm3
