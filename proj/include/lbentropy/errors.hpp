#pragma once

#include <stdexcept>
#include <string>

namespace lbentropy {

/// Bad input: parameters, configuration, or data that violate a contract.
class validation_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure (quadrature, root solve, bandwidth rule) failed.
class numerical_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace lbentropy
