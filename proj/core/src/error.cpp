#include "qcircle/error.hpp"

namespace qcircle {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams:
      return "invalid_params";
    case ErrorKind::NonConvergent:
      return "non_convergent";
    case ErrorKind::NotConvergent:
      return "not_convergent";
    case ErrorKind::Boundary:
      return "boundary";
    case ErrorKind::Overflow:
      return "overflow";
    case ErrorKind::WindowTooNarrow:
      return "window_too_narrow";
    case ErrorKind::DegenerateReference:
      return "degenerate_reference";
  }
  return "unknown";
}

}  // namespace qcircle
