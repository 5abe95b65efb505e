#pragma once

#include <stdexcept>
#include <string>

namespace avr {

// Raised for malformed or out-of-contract input: unknown candidates,
// bad quotas, unparsable files. Callers at the CLI boundary map it to
// exit status 1.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace avr
