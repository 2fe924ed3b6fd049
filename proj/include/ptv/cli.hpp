#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptv {

// Stamped into every JSON report so a stored file names the code that
// produced it.
inline constexpr const char* kToolVersion = "ptv 1.0.0";

// Full command-line front end. `args` excludes the program name. Returns
// the process exit code:
//   0  success
//   1  search exhausted its budget without a witness (inconclusive)
//   2  malformed input: flags, files, branch strings, unknown names
//   3  violated mathematical precondition (validation)
//   4  failed exact identity (internal inconsistency)
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ptv
