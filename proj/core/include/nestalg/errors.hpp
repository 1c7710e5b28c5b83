#ifndef NESTALG_ERRORS_HPP_
#define NESTALG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nestalg {

// Raised when an operation's input violates its precondition: malformed
// matrices, out-of-range indices, invalid parameters.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised by the file readers for malformed cmx/mtab content.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nestalg

#endif  // NESTALG_ERRORS_HPP_
