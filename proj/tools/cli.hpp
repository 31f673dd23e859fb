#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sortpm::cli {

enum ExitCode : int {
    kOk = 0,
    kInputInvalid = 2,
    kDomainFailure = 3,
};

// Runs one subcommand (fk, ik, jacobian, singularity, workspace, topology,
// design). args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sortpm::cli
