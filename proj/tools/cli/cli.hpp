#pragma once

#include <iosfwd>

namespace ijoin::cli {

/// Entry point of the `ijoin` tool. Returns the process exit code:
/// 0 on success, 1 on a failed check or runtime fault, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ijoin::cli
