#pragma once

#include <stdexcept>
#include <string>

namespace mwl {

/// Thrown for contract violations of any mwl operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mwl
