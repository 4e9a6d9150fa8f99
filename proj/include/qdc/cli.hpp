#pragma once

// Command-line front end. cli_main parses argv and writes results to the
// given streams so tests can drive it in-process; the qdc binary is a thin
// wrapper around it.
//
// Exit codes: 0 success, 1 a verification campaign failed, 2 bad input
// (unreadable or malformed files, invalid arguments, objects that fail
// validation).

#include <iosfwd>

namespace qdc {

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdc
