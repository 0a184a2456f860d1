#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nilgauss {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotInSubspace,
  RankDeficient,
  BoundaryProximity,
  WrongAlgebra,
  WrongFrame,
  Parse,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Syntax and name-resolution failures from the expression parser.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace nilgauss
