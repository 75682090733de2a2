#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>

namespace qcircle {

/// One term t_j of a bilateral series, given as log|t_j| and arg t_j.
/// log_magnitude = -inf encodes an exactly vanishing term.
struct LogTerm {
  double log_magnitude;
  double phase = 0.0;
};

using LogTermFn = std::function<LogTerm(std::int64_t)>;

struct SeriesOptions {
  double tol = 1e-14;
  std::int64_t max_half_width = 4096;
  /// Consecutive small, non-increasing terms required before a direction stops.
  int run_length = 5;
};

/// Result of summing sum_{j=-inf}^{inf} t_j.
struct SeriesValue {
  double log_magnitude;  // log|value|, -inf for an exact zero
  double phase;          // in (-pi, pi]
  std::complex<double> value;  // may be non-finite if log_magnitude > ~709
  double tail_bound;     // truncation estimate plus a roundoff floor
  std::int64_t terms_used;
};

/// Sums a two-sided series outward from j = 0 with rescaled accumulation.
///
/// Each direction stops after `run_length` consecutive terms that are
/// non-increasing in magnitude and below `tol * max(|partial sum|, largest
/// term seen)`. Throws Error{NonConvergent} when `max_half_width` is reached
/// first, Error{Overflow} on a +inf or NaN term magnitude.
SeriesValue sum_bilateral(const LogTermFn& log_term, const SeriesOptions& options = {});

enum class Convergence { Convergent, Divergent, Boundary };

std::string_view to_string(Convergence status) noexcept;

struct ConvergenceVerdict {
  Convergence status;
  double gate_value;  // q^l - (1 - s)
};

inline constexpr double kDefaultBoundaryBand = 1e-3;

/// Ratio-test verdict for the generalized norm series: convergent iff
/// q^l > 1 - s.
ConvergenceVerdict convergence_gate(double q, double l, double s,
                                    double boundary_band = kDefaultBoundaryBand);

/// Same classification for a precomputed q-power (q^l, or the mean
/// (q^l + q^h)/2 for mixed overlaps).
ConvergenceVerdict convergence_gate_from_power(double q_power, double s,
                                               double boundary_band = kDefaultBoundaryBand);

/// Empirical d'Alembert test: log(t_{n+1}/t_n) in both tails, probed at
/// |j| = probe and 2*probe. Both probes must agree in sign for a verdict;
/// otherwise Boundary.
Convergence ratio_test(const LogTermFn& log_term, std::int64_t probe = 256);

}  // namespace qcircle
