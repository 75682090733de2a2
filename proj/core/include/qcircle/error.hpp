#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcircle {

enum class ErrorKind {
  InvalidParams,
  NonConvergent,        // series engine exhausted max_half_width
  NotConvergent,        // convergence gate rejected (q, l, s)
  Boundary,             // gate value inside the boundary band
  Overflow,
  WindowTooNarrow,
  DegenerateReference,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcircle
