#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgy {

/// Command-line front end. Exit codes: 0 success, 1 usage error, 2 solver
/// error. A JSON configuration file (--config) may supply any long option;
/// explicit flags win.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

} // namespace kgy
