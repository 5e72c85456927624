#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stancetree::cli {

/// Runs the `stancetree` command line. `args` excludes the program name.
/// Data goes to `out` or to files, diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace stancetree::cli
