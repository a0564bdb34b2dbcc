#ifndef graphmap_tools_cli_hpp
#define graphmap_tools_cli_hpp

#include <ostream>
#include <string>
#include <vector>

namespace graphmap::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kConfig = 3,
    kVerify = 4,
    kIo = 5,
};

// Runs one command line (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace graphmap::cli

#endif
