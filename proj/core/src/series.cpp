#include "qcircle/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "qcircle/error.hpp"
#include "qcircle/scaled_complex.hpp"

namespace qcircle {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Direction {
  int sign;
  double last;
  double previous = kNegInf;
  int run = 0;
  bool done = false;
};

// log(t * rho / (1 - rho)) with rho = exp(log_ratio) < 1.
double log_geometric_tail(double log_last, double log_ratio) {
  return log_last + log_ratio - std::log(-std::expm1(log_ratio));
}

double direction_tail(const Direction& d, int run_length) {
  if (d.last == kNegInf) return kNegInf;
  const double log_ratio = d.last - d.previous;
  if (log_ratio < 0.0) return log_geometric_tail(d.last, log_ratio);
  return d.last + std::log(static_cast<double>(run_length));
}

// Difference of log magnitudes where -inf - -inf counts as vanishing.
double log_ratio(double later, double earlier) {
  if (later == kNegInf) return kNegInf;
  if (earlier == kNegInf) return std::numeric_limits<double>::infinity();
  return later - earlier;
}

}  // namespace

SeriesValue sum_bilateral(const LogTermFn& log_term, const SeriesOptions& options) {
  if (!(options.tol > 0.0) || options.max_half_width < 1 || options.run_length < 1) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("series options out of range: tol={:g} max_half_width={} run_length={}",
                            options.tol, options.max_half_width, options.run_length));
  }

  ScaledComplex sum;
  double log_abs_sum = kNegInf;
  double peak = kNegInf;
  std::int64_t terms = 0;

  auto add = [&](std::int64_t j) {
    const LogTerm t = log_term(j);
    if (std::isnan(t.log_magnitude) || t.log_magnitude == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorKind::Overflow, fmt::format("term j={} has log-magnitude {}", j, t.log_magnitude));
    }
    ++terms;
    if (t.log_magnitude != kNegInf) {
      sum += ScaledComplex::from_polar_log(t.log_magnitude, t.phase);
      log_abs_sum = log_add(log_abs_sum, t.log_magnitude);
      peak = std::max(peak, t.log_magnitude);
    }
    return t.log_magnitude;
  };

  const double log_tol = std::log(options.tol);
  const double first = add(0);
  std::array<Direction, 2> dirs{Direction{+1, first}, Direction{-1, first}};

  for (std::int64_t n = 1; !(dirs[0].done && dirs[1].done); ++n) {
    if (n > options.max_half_width) {
      throw Error(ErrorKind::NonConvergent,
                  fmt::format("series did not settle within half-width {}", options.max_half_width));
    }
    for (Direction& d : dirs) {
      if (d.done) continue;
      const double lm = add(d.sign * n);
      const double scale = std::max(sum.log_abs(), peak);
      const bool small = lm <= log_tol + scale;
      const bool falling = lm <= d.last;
      d.previous = d.last;
      d.last = lm;
      d.run = (small && falling) ? d.run + 1 : 0;
      d.done = d.run >= options.run_length;
    }
  }

  const double log_mag = sum.log_abs();
  if (std::isnan(log_mag) || log_mag == std::numeric_limits<double>::infinity()) {
    throw Error(ErrorKind::Overflow, "accumulated series magnitude left the representable range");
  }

  double log_tail = log_add(direction_tail(dirs[0], options.run_length),
                            direction_tail(dirs[1], options.run_length));
  const double log_roundoff =
      log_abs_sum + std::log(static_cast<double>(terms) * std::numeric_limits<double>::epsilon());
  log_tail = log_add(log_tail, log_roundoff);

  double phase = sum.is_zero() ? 0.0 : sum.arg();
  if (phase <= -std::numbers::pi) phase = std::numbers::pi;

  SeriesValue out;
  out.log_magnitude = log_mag;
  out.phase = phase;
  out.value = log_mag == kNegInf ? std::complex<double>{} : std::polar(std::exp(log_mag), phase);
  out.tail_bound = std::exp(log_tail);
  out.terms_used = terms;
  return out;
}

std::string_view to_string(Convergence status) noexcept {
  switch (status) {
    case Convergence::Convergent:
      return "convergent";
    case Convergence::Divergent:
      return "divergent";
    case Convergence::Boundary:
      return "boundary";
  }
  return "unknown";
}

ConvergenceVerdict convergence_gate_from_power(double q_power, double s, double boundary_band) {
  const double gate = q_power - (1.0 - s);
  if (gate > boundary_band) return {Convergence::Convergent, gate};
  if (gate < -boundary_band) return {Convergence::Divergent, gate};
  return {Convergence::Boundary, gate};
}

ConvergenceVerdict convergence_gate(double q, double l, double s, double boundary_band) {
  if (!(q > 0.0) || !(s > 0.0) || !std::isfinite(q) || !std::isfinite(s) || !std::isfinite(l)) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("convergence gate needs q > 0, s > 0, finite l (q={:g}, l={:g}, s={:g})", q, l, s));
  }
  return convergence_gate_from_power(std::pow(q, l), s, boundary_band);
}

Convergence ratio_test(const LogTermFn& log_term, std::int64_t probe) {
  if (probe < 1) throw Error(ErrorKind::InvalidParams, "ratio_test probe must be >= 1");
  bool all_below = true;
  bool any_above = false;
  for (const int sign : {+1, -1}) {
    const double near = log_ratio(log_term(sign * (probe + 1)).log_magnitude,
                                  log_term(sign * probe).log_magnitude);
    const double far = log_ratio(log_term(sign * (2 * probe + 1)).log_magnitude,
                                 log_term(sign * 2 * probe).log_magnitude);
    if (std::isnan(near) || std::isnan(far)) return Convergence::Boundary;
    if (near < 0.0 && far < 0.0) continue;
    all_below = false;
    if (near > 0.0 && far > 0.0) any_above = true;
  }
  if (all_below) return Convergence::Convergent;
  if (any_above) return Convergence::Divergent;
  return Convergence::Boundary;
}

}  // namespace qcircle
