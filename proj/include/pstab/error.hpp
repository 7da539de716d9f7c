#pragma once

#include <stdexcept>
#include <string>

namespace pstab {

// Error categories map directly onto CLI exit codes:
// usage -> 1, data -> 2, numeric -> 3.
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::usage:
        return 1;
      case ErrorKind::data:
        return 2;
      case ErrorKind::numeric:
        return 3;
    }
    return 3;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_usage(const std::string& message) {
  throw Error(ErrorKind::usage, message);
}

[[noreturn]] inline void fail_data(const std::string& message) {
  throw Error(ErrorKind::data, message);
}

[[noreturn]] inline void fail_numeric(const std::string& message) {
  throw Error(ErrorKind::numeric, message);
}

}  // namespace pstab
