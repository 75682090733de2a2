#pragma once

#include <complex>
#include <map>

#include "qcircle/series.hpp"

namespace qcircle {

/// Below this |q - 1| every closed form containing 1/ln q or 1/(q - 1) is
/// replaced by its q -> 1 limit.
inline constexpr double kQOneBand = 1e-6;

[[nodiscard]] inline bool is_undeformed(double q) noexcept { return std::abs(q - 1.0) < kQOneBand; }

/// Quantum number [x]_q = (q^x - 1) / (q - 1), continuous through q = 1.
[[nodiscard]] double q_number(double x, double q);

/// expm1(x) - x, accurate for small |x|.
[[nodiscard]] double expm1_minus_x(double x) noexcept;

/// Laurent polynomial in x: power -> coefficient.
using LaurentPoly = std::map<int, std::complex<double>>;

/// D_q f(x) = (f(qx) - f(x)) / ((q - 1) x), applied monomial-wise:
/// x^n -> [n]_q x^(n-1). Zero coefficients are dropped.
[[nodiscard]] LaurentPoly jackson_derivative(const LaurentPoly& coeffs, double q);

// Theta functions use the convention
//   theta3(z|tau) = sum_j exp(i pi tau j^2 + 2 pi i j z)
//   theta2(z|tau) = sum_j exp(i pi tau (j+1/2)^2 + 2 pi i (j+1/2) z)
// which requires Im(tau) > 0.

[[nodiscard]] std::complex<double> theta3(std::complex<double> z, std::complex<double> tau,
                                          const SeriesOptions& options = {});
[[nodiscard]] std::complex<double> theta2(std::complex<double> z, std::complex<double> tau,
                                          const SeriesOptions& options = {});

/// Full series result for theta3, exposing log-magnitude and tail estimate.
[[nodiscard]] SeriesValue theta3_series(std::complex<double> z, std::complex<double> tau,
                                        const SeriesOptions& options = {});
[[nodiscard]] SeriesValue theta2_series(std::complex<double> z, std::complex<double> tau,
                                        const SeriesOptions& options = {});

/// (1/2) d/dl ln theta3(i l/pi | i s/pi), by term-wise differentiation:
/// sum_j j e^{2lj - s j^2} / sum_j e^{2lj - s j^2}.
[[nodiscard]] double theta3_log_derivative(double l, double s = 1.0, const SeriesOptions& options = {});

}  // namespace qcircle
