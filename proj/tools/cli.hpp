#ifndef NESTALG_TOOLS_CLI_HPP_
#define NESTALG_TOOLS_CLI_HPP_

#include <iosfwd>

namespace nestalg::cli {

// Exit codes: 0 success, 1 usage or input error, 2 infeasible request
// (extraction or flattening failed; the best certificate is still written).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nestalg::cli

#endif  // NESTALG_TOOLS_CLI_HPP_
