#include "radnlw/error.hpp"

namespace radnlw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::unsupported_data: return "unsupported data";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::cone_violation: return "cone-violation";
    case ErrorKind::window_out_of_range: return "window out of range";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::mismatch: return "mismatch";
    case ErrorKind::format: return "format";
    case ErrorKind::config: return "config";
  }
  return "error";
}

}  // namespace radnlw
