#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concretix::driver {

/// Exit codes: 0 solved, 1 unsatisfiable, 2 usage or input error, 3 timeout.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace concretix::driver
