#pragma once

#include "idp/sample.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace idp::cli {

// `idp test` exits with the decision; everything above 2 is an error.
inline constexpr int kExitGreater = 0;
inline constexpr int kExitNotGreater = 1;
inline constexpr int kExitIndeterminate = 2;
inline constexpr int kExitInputError = 64;  // unreadable or ill-formed data files
inline constexpr int kExitUsageError = 65;  // invalid flags or parameter ranges

/// Thrown for unreadable or malformed data files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One real per line; blank lines and `#` comments are skipped, and a single
/// non-numeric first line is accepted as a header.
Sample parse_sample(const std::string& text, const std::string& origin);
Sample read_sample_file(const std::string& path);

/// Entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idp::cli
