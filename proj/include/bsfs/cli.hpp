#pragma once

#include <iosfwd>

namespace bsfs::cli {

/// Parses argv, runs the subcommand and writes its table. Returns 0 on
/// success, 1 when `validate` finds a failed check, 2 on usage or domain
/// errors (message on `err`).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bsfs::cli
