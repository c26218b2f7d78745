#pragma once

#include <stdexcept>
#include <string>

namespace lc {

// Bad user input: unparsable files, unknown names, shape mismatches.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Something that cannot happen for valid input did happen.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact search refused because the instance is over its configured limit.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lc
