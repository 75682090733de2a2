#include "qcircle/qmath.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "qcircle/error.hpp"

namespace qcircle {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("q must be positive and finite (q={:g})", q));
  }
}

void require_upper_half_plane(std::complex<double> tau) {
  if (!(tau.imag() > 0.0)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("theta needs Im(tau) > 0 (tau={:g}{:+g}i)", tau.real(), tau.imag()));
  }
}

// e^{2 pi i k z} is 2-periodic in Re z for half-integer k; reducing keeps the
// phases small for large |k|.
double reduce_real_part(double x) { return std::remainder(x, 2.0); }

LogTerm theta_term(double k, std::complex<double> z, std::complex<double> tau) {
  return {-kPi * tau.imag() * k * k - 2.0 * kPi * k * z.imag(),
          kPi * tau.real() * k * k + 2.0 * kPi * k * z.real()};
}

}  // namespace

double expm1_minus_x(double x) noexcept {
  if (std::abs(x) < 0.1) {
    // x^2/2! + x^3/3! + ... ; 13 terms put the truncation below 1e-17 relative.
    double term = x * x / 2.0;
    double sum = term;
    for (int n = 3; n <= 14; ++n) {
      term *= x / n;
      sum += term;
    }
    return sum;
  }
  return std::expm1(x) - x;
}

double q_number(double x, double q) {
  require_positive_q(q);
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidParams, "q_number needs a finite argument");
  if (is_undeformed(q)) return x + 0.5 * x * (x - 1.0) * (q - 1.0);
  // Integer powers of a dyadic q are exact through pow.
  if (x == std::nearbyint(x) && std::abs(q - 1.0) >= 0.25) return (std::pow(q, x) - 1.0) / (q - 1.0);
  const double lq = std::log(q);
  return std::expm1(x * lq) / std::expm1(lq);
}

LaurentPoly jackson_derivative(const LaurentPoly& coeffs, double q) {
  require_positive_q(q);
  if (q == 1.0) throw Error(ErrorKind::InvalidParams, "Jackson derivative needs q != 1");
  LaurentPoly out;
  for (const auto& [power, c] : coeffs) {
    if (power == 0 || c == std::complex<double>{}) continue;
    out[power - 1] = q_number(power, q) * c;
  }
  return out;
}

SeriesValue theta3_series(std::complex<double> z, std::complex<double> tau, const SeriesOptions& options) {
  require_upper_half_plane(tau);
  z.real(reduce_real_part(z.real()));
  return sum_bilateral([&](std::int64_t j) { return theta_term(static_cast<double>(j), z, tau); }, options);
}

SeriesValue theta2_series(std::complex<double> z, std::complex<double> tau, const SeriesOptions& options) {
  require_upper_half_plane(tau);
  z.real(reduce_real_part(z.real()));
  return sum_bilateral([&](std::int64_t j) { return theta_term(static_cast<double>(j) + 0.5, z, tau); },
                       options);
}

std::complex<double> theta3(std::complex<double> z, std::complex<double> tau, const SeriesOptions& options) {
  return theta3_series(z, tau, options).value;
}

std::complex<double> theta2(std::complex<double> z, std::complex<double> tau, const SeriesOptions& options) {
  return theta2_series(z, tau, options).value;
}

double theta3_log_derivative(double l, double s, const SeriesOptions& options) {
  if (!std::isfinite(l) || !(s > 0.0)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("theta3_log_derivative needs finite l, s > 0 (l={:g}, s={:g})", l, s));
  }
  auto weight = [&](std::int64_t j) {
    const double jd = static_cast<double>(j);
    return 2.0 * l * jd - s * jd * jd;
  };
  const SeriesValue denominator = sum_bilateral([&](std::int64_t j) { return LogTerm{weight(j)}; }, options);
  const SeriesValue numerator = sum_bilateral(
      [&](std::int64_t j) {
        if (j == 0) return LogTerm{-std::numeric_limits<double>::infinity()};
        return LogTerm{weight(j) + std::log(std::abs(static_cast<double>(j))), j < 0 ? kPi : 0.0};
      },
      options);
  if (numerator.log_magnitude == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(numerator.log_magnitude - denominator.log_magnitude) * std::cos(numerator.phase);
}

}  // namespace qcircle
