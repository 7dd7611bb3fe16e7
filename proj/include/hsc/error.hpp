// SPDX-FileCopyrightText: 2026 The hsc authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HSC_ERROR_HPP
#define HSC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hsc {

enum class ErrorKind {
  MalformedFile,
  InvalidData,
  LabelCount,
  EmptyInput,
  InvalidParameter,
  ContractViolation,
  Format,
  Corruption,
  DecodeUnderrun,
  MissingLabels,
  Config,
  InsufficientPoints,
  DomainError,
  Oversize,
  Protocol,
  Transport,
  Io,
  Internal,
};

/// Single exception type for the whole library; `kind()` tells callers
/// (and the CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

} // namespace hsc

#endif
