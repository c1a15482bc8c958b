#pragma once

#include <stdexcept>
#include <string>

namespace popstack {

// Malformed input data: duplicate entries, values out of range, unparsable text.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pattern feature outside the supported fragment (e.g. more than one barred entry).
struct unsupported_pattern : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computation was asked to exceed its configured desk-scale bound.
struct resource_limit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal cross-check failed (e.g. a sum that must be integral is not).
struct consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace popstack
