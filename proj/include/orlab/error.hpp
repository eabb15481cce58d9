#pragma once

#include <stdexcept>
#include <string>

namespace orlab {

enum class ErrorCode {
  InvalidInput,
  InvalidComplex,
  InvalidMap,
  UnknownId,
  Mismatch,
  NoE,
  NotMinimal,
  ProperPower,
  NotClosed,
  NoAlpha,
  OrderUndecided,
  NonUniqueMin,
  ClassificationConflict,
  WordProblemUnknown,
  MalformedState,
  Stuck,
  NotPrime,
  Unsupported,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orlab
