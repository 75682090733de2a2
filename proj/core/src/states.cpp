#include "qcircle/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "qcircle/error.hpp"
#include "qcircle/qmath.hpp"

namespace qcircle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogMax = std::log(std::numeric_limits<double>::max());

double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Deformed Gaussian factor of log|<j|l,alpha>|:
///   -(s/ln q)[j]_q - s j/(1-q) = -s (expm1(j ln q) - j ln q) / (ln q expm1(ln q)).
double log_gaussian(std::int64_t j, const DeformationParams& p) {
  const double jd = static_cast<double>(j);
  if (p.undeformed()) return -0.5 * p.s * jd * jd;
  const double lq = std::log(p.q);
  return -p.s * expm1_minus_x(jd * lq) / (lq * std::expm1(lq));
}

double bracket(double l, const DeformationParams& p) { return p.undeformed() ? l : q_number(l, p.q); }

double log_amplitude_magnitude(std::int64_t j, double l, const DeformationParams& p) {
  const double lin = static_cast<double>(j) * bracket(l, p);
  return lin + log_gaussian(j, p);
}

// Refuses divergent and boundary (q, s) pairs; q_power is q^l, or the mean
// (q^l + q^h)/2 for the mixed overlap series.
void require_convergent(const DeformationParams& p, double q_power, std::string_view what) {
  if (p.undeformed() || p.s == 1.0) return;
  const ConvergenceVerdict v = convergence_gate_from_power(q_power, p.s);
  const double one_minus_s = 1.0 - p.s;
  switch (v.status) {
    case Convergence::Convergent:
      return;
    case Convergence::Divergent:
      throw Error(ErrorKind::NotConvergent,
                  fmt::format("divergent: {}={:g} < 1-s={:g}", what, q_power, one_minus_s));
    case Convergence::Boundary:
      throw Error(ErrorKind::Boundary,
                  fmt::format("boundary: {}={:g} ~ 1-s={:g} (|gate|={:g} <= {:g})", what, q_power, one_minus_s,
                              std::abs(v.gate_value), kDefaultBoundaryBand));
  }
}

void require_diagonal_convergent(const StateLabel& label, const DeformationParams& p) {
  if (p.undeformed() || p.s == 1.0) return;
  require_convergent(p, std::pow(p.q, label.l()), "q^l");
}

void require_finite_label(const StateLabel& label) {
  if (!std::isfinite(label.l()) || !std::isfinite(label.alpha())) {
    throw Error(ErrorKind::InvalidParams, "state label must be finite");
  }
}

std::complex<double> finite_value(const SeriesValue& v, std::string_view what) {
  if (v.log_magnitude > kLogMax) {
    throw Error(ErrorKind::Overflow, fmt::format("{} has log-magnitude {:g}, beyond double range", what, v.log_magnitude));
  }
  return v.value;
}

std::complex<double> tau_for(double s) { return {0.0, s / kPi}; }

}  // namespace

void DeformationParams::validate() const {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("q must be positive and finite (q={:g})", q));
  }
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("s must be positive and finite (s={:g})", s));
  }
}

bool DeformationParams::undeformed() const noexcept { return is_undeformed(q); }

StateLabel::StateLabel(double l, double alpha) : l_(l), alpha_(normalize_angle(alpha)) {
  if (!std::isfinite(l) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidParams, fmt::format("state label must be finite (l={:g}, alpha={:g})", l, alpha));
  }
}

std::size_t argmax(const DistributionTable& table) {
  const auto it = std::max_element(table.weights.begin(), table.weights.end());
  return static_cast<std::size_t>(std::distance(table.weights.begin(), it));
}

std::complex<double> xi_from_label(const StateLabel& label, const DeformationParams& params) {
  params.validate();
  return std::polar(std::exp(-bracket(label.l(), params)), label.alpha());
}

StateLabel label_from_xi(std::complex<double> xi, const DeformationParams& params) {
  params.validate();
  const double r = std::abs(xi);
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::InvalidParams, "xi must be nonzero and finite");
  }
  const double alpha = std::arg(xi);
  const double b = -std::log(r);
  if (params.undeformed()) return {b, alpha};
  const double arg = (params.q - 1.0) * b;
  if (!(arg > -1.0)) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("|xi|={:g} lies outside the deformed phase space for q={:g}", r, params.q));
  }
  return {std::log1p(arg) / std::log(params.q), alpha};
}

PhaseSpacePoint phase_space_point(const StateLabel& label, const DeformationParams& params) {
  const std::complex<double> xi = xi_from_label(label, params);
  return {xi.real(), xi.imag()};
}

LogTerm amplitude_log(std::int64_t j, const StateLabel& label, const DeformationParams& params) {
  params.validate();
  return {log_amplitude_magnitude(j, label.l(), params), -static_cast<double>(j) * label.alpha()};
}

std::complex<double> amplitude(std::int64_t j, const StateLabel& label, const DeformationParams& params) {
  const LogTerm t = amplitude_log(j, label, params);
  if (t.log_magnitude > kLogMax) {
    throw Error(ErrorKind::Overflow, fmt::format("amplitude j={} has log-magnitude {:g}", j, t.log_magnitude));
  }
  return std::polar(std::exp(t.log_magnitude), t.phase);
}

SeriesValue norm_squared_series(const StateLabel& label, const DeformationParams& params,
                                const SeriesOptions& options) {
  params.validate();
  require_finite_label(label);
  if (params.undeformed()) return theta3_series({0.0, label.l() / kPi}, tau_for(params.s), options);
  require_diagonal_convergent(label, params);
  const double l = label.l();
  return sum_bilateral([&](std::int64_t j) { return LogTerm{2.0 * log_amplitude_magnitude(j, l, params)}; },
                       options);
}

double norm_squared(const StateLabel& label, const DeformationParams& params, const SeriesOptions& options) {
  return finite_value(norm_squared_series(label, params, options), "norm").real();
}

SeriesValue overlap_series(const StateLabel& label1, const StateLabel& label2, const DeformationParams& params,
                           const SeriesOptions& options) {
  params.validate();
  require_finite_label(label1);
  require_finite_label(label2);
  const double dphase = label1.alpha() - label2.alpha();
  if (params.undeformed()) {
    const std::complex<double> z{dphase / kTwoPi, -(label1.l() + label2.l()) / kTwoPi};
    return theta3_series(z, tau_for(params.s), options);
  }
  if (params.s != 1.0) {
    require_convergent(params, 0.5 * (std::pow(params.q, label1.l()) + std::pow(params.q, label2.l())),
                       "(q^l+q^h)/2");
  }
  const double l = label1.l();
  const double h = label2.l();
  return sum_bilateral(
      [&](std::int64_t j) {
        return LogTerm{log_amplitude_magnitude(j, l, params) + log_amplitude_magnitude(j, h, params),
                       dphase * static_cast<double>(j)};
      },
      options);
}

std::complex<double> overlap(const StateLabel& label1, const StateLabel& label2, const DeformationParams& params,
                             const SeriesOptions& options) {
  return finite_value(overlap_series(label1, label2, params, options), "overlap");
}

SeriesValue wavefunction_series(double phi, const StateLabel& label, const DeformationParams& params,
                                const SeriesOptions& options) {
  params.validate();
  require_finite_label(label);
  if (!std::isfinite(phi)) throw Error(ErrorKind::InvalidParams, "phi must be finite");
  const double shift = normalize_angle(phi - label.alpha());
  if (params.undeformed()) {
    const std::complex<double> z{shift / kTwoPi, -label.l() / kTwoPi};
    return theta3_series(z, tau_for(0.5 * params.s), options);
  }
  require_diagonal_convergent(label, params);
  const double l = label.l();
  return sum_bilateral(
      [&](std::int64_t j) {
        return LogTerm{log_amplitude_magnitude(j, l, params), shift * static_cast<double>(j)};
      },
      options);
}

std::complex<double> wavefunction(double phi, const StateLabel& label, const DeformationParams& params,
                                  const SeriesOptions& options) {
  return finite_value(wavefunction_series(phi, label, params, options), "wavefunction");
}

double expectation_Jq(const StateLabel& label, const DeformationParams& params, const SeriesOptions& options) {
  params.validate();
  require_finite_label(label);
  if (params.undeformed()) return theta3_log_derivative(label.l(), params.s, options);
  require_diagonal_convergent(label, params);
  const double l = label.l();
  const SeriesValue denominator = norm_squared_series(label, params, options);
  const SeriesValue numerator = sum_bilateral(
      [&](std::int64_t j) {
        const double qj = q_number(static_cast<double>(j), params.q);
        if (qj == 0.0) return LogTerm{kNegInf};
        return LogTerm{2.0 * log_amplitude_magnitude(j, l, params) + std::log(std::abs(qj)), qj < 0.0 ? kPi : 0.0};
      },
      options);
  if (numerator.log_magnitude == kNegInf) return 0.0;
  return std::exp(numerator.log_magnitude - denominator.log_magnitude) * std::cos(numerator.phase);
}

std::complex<double> expectation_U(const StateLabel& label, const DeformationParams& params,
                                   const SeriesOptions& options) {
  params.validate();
  require_finite_label(label);
  const double l = label.l();
  double log_ratio = 0.0;
  if (params.undeformed()) {
    // e^{-s/4} theta2(il/pi | is/pi) / theta3(il/pi | is/pi)
    const std::complex<double> z{0.0, l / kPi};
    const SeriesValue num = theta2_series(z, tau_for(params.s), options);
    const SeriesValue den = theta3_series(z, tau_for(params.s), options);
    log_ratio = -0.25 * params.s + num.log_magnitude - den.log_magnitude;
  } else {
    require_diagonal_convergent(label, params);
    // sum_j conj(a_{j+1}) a_j = e^{i alpha} sum_j |a_j| |a_{j+1}|
    const SeriesValue num = sum_bilateral(
        [&](std::int64_t j) {
          return LogTerm{log_amplitude_magnitude(j, l, params) + log_amplitude_magnitude(j + 1, l, params)};
        },
        options);
    const SeriesValue den = norm_squared_series(label, params, options);
    log_ratio = num.log_magnitude - den.log_magnitude;
  }
  return std::polar(std::exp(log_ratio), label.alpha());
}

std::complex<double> relative_expectation_U(const StateLabel& label, const DeformationParams& params,
                                            const SeriesOptions& options) {
  const std::complex<double> reference = expectation_U(StateLabel{label.l(), 0.0}, params, options);
  if (!(std::abs(reference) > 0.0) || !std::isfinite(std::abs(reference))) {
    throw Error(ErrorKind::DegenerateReference,
                fmt::format("<U> at (l={:g}, alpha=0) is {:g}; relative expectation undefined", label.l(),
                            std::abs(reference)));
  }
  return expectation_U(label, params, options) / reference;
}

DistributionTable dist_j(const StateLabel& label, const DeformationParams& params, std::optional<JWindow> window,
                         const SeriesOptions& options) {
  const SeriesValue norm = norm_squared_series(label, params, options);
  const double log_norm = norm.log_magnitude;
  const double l = label.l();
  const bool widen = !window.has_value();
  JWindow w = window.value_or(JWindow{});
  if (w.lo > w.hi) throw Error(ErrorKind::InvalidParams, fmt::format("empty j window [{}, {}]", w.lo, w.hi));

  for (;;) {
    DistributionTable table{{}, {}, NormalizationKind::DiscreteSum};
    table.support.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
    table.weights.reserve(static_cast<std::size_t>(w.hi - w.lo + 1));
    double mass = 0.0;
    for (std::int64_t j = w.lo; j <= w.hi; ++j) {
      const double p = std::exp(2.0 * log_amplitude_magnitude(j, l, params) - log_norm);
      table.support.push_back(static_cast<double>(j));
      table.weights.push_back(p);
      mass += p;
    }
    const double omitted = std::abs(1.0 - mass);
    if (omitted <= kDistributionTailMass) return table;
    if (!widen || w.hi - w.lo >= 2 * options.max_half_width) {
      throw Error(ErrorKind::WindowTooNarrow,
                  fmt::format("window [{}, {}] leaves probability mass {:g} outside (limit {:g})", w.lo, w.hi,
                              omitted, kDistributionTailMass));
    }
    w.lo *= 2;
    w.hi *= 2;
  }
}

DistributionTable dist_phi(const StateLabel& label, const DeformationParams& params, int grid_size,
                           const SeriesOptions& options) {
  if (grid_size < 16) throw Error(ErrorKind::InvalidParams, fmt::format("grid_size must be >= 16 (got {})", grid_size));
  const double log_norm = norm_squared_series(label, params, options).log_magnitude;
  DistributionTable table{{}, {}, NormalizationKind::AngularDensity};
  table.support.reserve(static_cast<std::size_t>(grid_size));
  table.weights.reserve(static_cast<std::size_t>(grid_size));
  for (int k = 0; k < grid_size; ++k) {
    const double phi = kTwoPi * k / grid_size;
    const SeriesValue psi = wavefunction_series(phi, label, params, options);
    table.support.push_back(phi);
    table.weights.push_back(psi.log_magnitude == kNegInf ? 0.0 : std::exp(2.0 * psi.log_magnitude - log_norm));
  }
  return table;
}

}  // namespace qcircle
