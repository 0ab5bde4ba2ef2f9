#pragma once

#include <stdexcept>
#include <string>

namespace radnlw {

enum class ErrorKind {
  unsupported_data,
  resolution,
  cone_violation,
  window_out_of_range,
  degenerate,
  mismatch,
  format,
  config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace radnlw
