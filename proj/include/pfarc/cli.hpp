#pragma once

#include <iosfwd>

namespace pfarc {

/// Entry point of the pfarc command. Exit codes: 0 pass, 1 verification
/// failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace pfarc
