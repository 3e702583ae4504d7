#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abcs {

// Full command-line surface (subcommands: query, core, bench, gen-attrs).
// args excludes the program name. Returns the process exit code: 0 on
// success (including empty query results), 2 on input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abcs
