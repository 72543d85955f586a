#pragma once

#include <stdexcept>

namespace randnet {

/// A request that is well-formed but exceeds a documented cost limit.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace randnet
