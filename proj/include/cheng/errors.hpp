#pragma once

#include <stdexcept>
#include <string>

namespace cheng {

// Every throwing operation in the library uses Error with one of these codes,
// so callers (and the CLI) can map failures without string matching.
enum class ErrorCode {
  CycleDetected,
  NoFacilitatingParent,
  DanglingScope,
  BadProbability,
  DuplicateName,
  InvalidName,
  UnknownVariable,
  ExogenousVariable,
  MissingLiteral,
  NoDirectEdge,
  NoPath,
  TooLarge,
  Mismatch,
  DataModelMismatch,
  InvalidQuery,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cheng
