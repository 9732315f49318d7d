#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orchard {

enum class Errc {
  // tokenizer / parser
  UnknownToken,
  EmptyInput,
  UnbalancedBrackets,
  MissingDelimiter,
  EmptyOperandList,
  CopyArity,
  CopyInFirstTree,
  IndexOutOfRange,
  UnexpectedToken,
  // evaluator
  MissingTable,
  // generator
  InvalidDepth,
  MissingRefCount,
  InvalidSpec,
  // scorer / file handling
  LineCountMismatch,
  MalformedLine,
  UnreadableFile,
  IoError,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace orchard
