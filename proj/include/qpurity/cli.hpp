// Command-line front end. run_cli is the whole program; the binary's main just
// forwards to it, and tests drive commands in-process through string streams.
//
// Exit codes: 0 ok, 2 usage or input error, 3 convergence failure under
// --strict, 4 verification failure.

#ifndef QPURITY_CLI_HPP
#define QPURITY_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qpurity {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qpurity

#endif
