#pragma once

#include <iosfwd>

namespace ppcurve {

// Exit codes: 0 success, 1 a pass flag failed, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ppcurve
