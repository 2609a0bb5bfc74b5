#pragma once

#include <stdexcept>
#include <string>

namespace netdiff {

// Raised for contract violations on inputs (bad parameters, malformed
// files, metrics requested on graphs that do not support them).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netdiff
