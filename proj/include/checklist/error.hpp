#pragma once

#include <stdexcept>
#include <string>

namespace checklist {

enum class ErrorKind {
  structural,  // shape / index violations
  format,      // malformed input files
  config,      // invalid configuration or usage
  data,        // data that cannot support the requested operation
  training,    // divergence or degenerate fitted models
  refusal,     // oracle caps exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace checklist
