#pragma once

#include <stdexcept>
#include <string>

namespace persist {

enum class ErrorKind {
  input,         // malformed data supplied by a caller or a file
  invalid_state  // an invariant of a computed object failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& what) {
  throw Error(ErrorKind::input, what);
}

[[noreturn]] inline void fail_state(const std::string& what) {
  throw Error(ErrorKind::invalid_state, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail_input(what);
}

}  // namespace persist
