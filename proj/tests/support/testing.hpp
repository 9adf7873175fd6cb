#pragma once

#include <optional>

#include "gaborlab/error.hpp"

namespace testing {

// Error code raised by f(), or nullopt when it returns normally.
template <typename F>
std::optional<gaborlab::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const gaborlab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
