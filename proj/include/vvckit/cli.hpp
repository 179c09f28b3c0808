#pragma once

#include <iosfwd>

namespace vvckit {

// Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or I/O.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vvckit
