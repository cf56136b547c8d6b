#pragma once

#include <stdexcept>

namespace lrpi {

// Error categories; the CLI maps them to exit codes 1/2/3.

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lrpi
