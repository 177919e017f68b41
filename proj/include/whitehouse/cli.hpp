#ifndef WHITEHOUSE_CLI_HPP
#define WHITEHOUSE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace whitehouse::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,         // unknown command or flag, unparsable arguments
    kVerification = 3,  // a check failed; a JSON report goes to the error stream
    kResourceCap = 4,   // --max-faces or a per-command size limit
    kInvalidN = 5,      // n below 3
    kBadFaceJson = 6,   // malformed face JSON for `forest`
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace whitehouse::cli

#endif  // WHITEHOUSE_CLI_HPP
