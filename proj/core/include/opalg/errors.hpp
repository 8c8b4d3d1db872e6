// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace opalg {

// Typed failures thrown by the library. Suites convert these into failed
// check records; the CLI maps ConfigError to exit code 2.

struct FormNotPositiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateFormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidIdentityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WindowTooSmallError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedMethodError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace opalg
