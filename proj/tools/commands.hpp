#pragma once

#include <iosfwd>

namespace gpdact::cli {

/// Entry point shared by the executable and the tests. Exit status: 0 when
/// every check passes, 1 on a failed check, 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpdact::cli
