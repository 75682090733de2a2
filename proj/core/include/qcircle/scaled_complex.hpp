#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace qcircle {

/// Complex number held as `mantissa * exp(log_scale)`.
///
/// Coherent-state coefficients and the entries of Z_q routinely reach
/// magnitudes like exp(+-1e18) at the edges of a truncated basis. Keeping the
/// exponent separate lets such values be multiplied together before anything
/// is exponentiated. Values with `log_scale == 0` combine with plain complex
/// arithmetic, so exact double results (e.g. dyadic quantum integers) stay
/// exact.
class ScaledComplex {
 public:
  constexpr ScaledComplex() = default;
  constexpr ScaledComplex(std::complex<double> mantissa, double log_scale = 0.0)
      : mantissa_(mantissa), log_scale_(mantissa == std::complex<double>{} ? 0.0 : log_scale) {}

  /// |z| = exp(log_magnitude), arg z = phase. A log_magnitude of -inf is zero.
  static ScaledComplex from_polar_log(double log_magnitude, double phase) {
    if (log_magnitude == -std::numeric_limits<double>::infinity()) return {};
    return {std::polar(1.0, phase), log_magnitude};
  }

  [[nodiscard]] constexpr std::complex<double> mantissa() const { return mantissa_; }
  [[nodiscard]] constexpr double log_scale() const { return log_scale_; }
  [[nodiscard]] constexpr bool is_zero() const { return mantissa_ == std::complex<double>{}; }

  [[nodiscard]] double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return log_scale_ + std::log(std::abs(mantissa_));
  }

  [[nodiscard]] double arg() const { return std::arg(mantissa_); }

  /// Ordinary complex value; saturates to 0 or inf outside the double range.
  [[nodiscard]] std::complex<double> value() const {
    if (log_scale_ == 0.0 || is_zero()) return mantissa_;
    return std::polar(std::exp(log_abs()), arg());
  }

  [[nodiscard]] ScaledComplex conj() const { return {std::conj(mantissa_), log_scale_}; }

  friend ScaledComplex operator-(const ScaledComplex& a) { return {-a.mantissa_, a.log_scale_}; }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.mantissa_ * b.mantissa_, a.log_scale_ + b.log_scale_};
  }

  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.log_scale_ == b.log_scale_) return {a.mantissa_ + b.mantissa_, a.log_scale_};
    const ScaledComplex& big = a.log_scale_ > b.log_scale_ ? a : b;
    const ScaledComplex& small = a.log_scale_ > b.log_scale_ ? b : a;
    const double shrink = std::exp(small.log_scale_ - big.log_scale_);
    return {big.mantissa_ + small.mantissa_ * shrink, big.log_scale_};
  }

  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }

  ScaledComplex& operator+=(const ScaledComplex& other) { return *this = *this + other; }
  ScaledComplex& operator*=(const ScaledComplex& other) { return *this = *this * other; }

 private:
  std::complex<double> mantissa_{};
  double log_scale_ = 0.0;
};

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace qcircle
