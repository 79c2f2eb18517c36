#pragma once
// Command line front end.  Subcommands: list-ttf, classify, demo, selftest.
// Exit codes: 0 success, 2 input error, 3 theorem/oracle disagreement,
// 4 resource bound exceeded (the report is still emitted with the error
// recorded per ideal).

#include <string>

namespace ttf {

// the whole program behind main(); argv[0] is the program name
int run_cli(int argc, const char* const* argv);

} // namespace ttf
