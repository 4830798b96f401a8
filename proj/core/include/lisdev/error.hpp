#pragma once

#include <stdexcept>
#include <string>

namespace lisdev {

// Raised when caller-supplied input violates a documented precondition.
// The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lisdev
