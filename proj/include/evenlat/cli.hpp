#pragma once

#include <ostream>

namespace evenlat {

// Exit codes: 0 success, 1 invalid input, 2 refusal, 3 internal error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace evenlat
