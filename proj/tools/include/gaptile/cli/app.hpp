#pragma once

#include <ostream>

namespace gaptile::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitIo = 1,
    kExitHypothesis = 2,
    kExitNotFound = 3,
    kExitVerification = 4,
};

/// Entry point shared by the gaptile binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaptile::cli
