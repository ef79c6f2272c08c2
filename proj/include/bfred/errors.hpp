#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bfred {

/* Every failure that callers are expected to handle carries a stable
 * snake_case code alongside the human-readable message.  The CLI maps
 * codes to exit status and JSON error objects; tests match on codes. */
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& what) {
  throw Error(std::move(code), what);
}

}  // namespace bfred
