// SPDX-License-Identifier: Apache-2.0
//
// Exception types shared by every fabc module.

#ifndef FABC_ERRORS_HPP
#define FABC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fabc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed request: bad configuration field, too few samples, empty sweep.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fabc

#endif  // FABC_ERRORS_HPP
