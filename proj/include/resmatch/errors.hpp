#pragma once

#include <stdexcept>
#include <string>

namespace resmatch {

enum class Errc {
  DuplicateId,
  MissingThreshold,
  ThresholdOrder,
  UnknownPatient,
  UnknownCategory,
  BadReserve,
  CapacityExceeded,
  UndefinedComparison,
  InvalidChain,
  TooLarge,
  ParseError,
  BadSpec,
};

/// Stable uppercase name used in error messages and the C API ("DUPLICATE_ID", ...).
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace resmatch
