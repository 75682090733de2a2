#include "qcircle/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "qcircle/error.hpp"

namespace qcircle {

namespace {

void require_half_width(int half_width, int minimum) {
  if (half_width < minimum) {
    throw Error(ErrorKind::InvalidParams, fmt::format("half-width J must be >= {} (got {})", minimum, half_width));
  }
}

void require_same_space(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.half_width() != b.half_width()) {
    throw Error(ErrorKind::InvalidParams,
                fmt::format("operators act on different windows (J={} vs J={})", a.half_width(), b.half_width()));
  }
}

double log_sum_squares(const std::vector<ScaledComplex>& values) {
  double acc = -std::numeric_limits<double>::infinity();
  for (const ScaledComplex& v : values) acc = log_add(acc, 2.0 * v.log_abs());
  return acc;
}

template <class Combine>
TruncatedOperator combine_entrywise(const TruncatedOperator& a, const TruncatedOperator& b, Combine combine) {
  require_same_space(a, b);
  TruncatedOperator out(a.half_width(), std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
  const int J = a.half_width();
  for (int offset = -out.upper(); offset <= out.lower(); ++offset) {
    for (int col = -J; col <= J; ++col) {
      const int row = col + offset;
      if (row < -J || row > J) continue;
      const ScaledComplex v = combine(a.at(row, col), b.at(row, col));
      if (!v.is_zero()) out.set(row, col, v);
    }
  }
  return out;
}

}  // namespace

CoefficientVector::CoefficientVector(int half_width)
    : half_width_(half_width), coeffs_(static_cast<std::size_t>(2 * half_width + 1)) {
  require_half_width(half_width, 0);
}

TruncatedOperator::TruncatedOperator(int half_width, int lower, int upper)
    : half_width_(half_width), lower_(lower), upper_(upper) {
  require_half_width(half_width, 1);
  if (lower < 0 || upper < 0) throw Error(ErrorKind::InvalidParams, "band extents must be non-negative");
  diagonals_.assign(static_cast<std::size_t>(lower + upper + 1),
                    std::vector<ScaledComplex>(static_cast<std::size_t>(dimension())));
}

std::size_t TruncatedOperator::slot(int row, int col) const {
  return static_cast<std::size_t>(row - col + upper_);
}

ScaledComplex TruncatedOperator::at(int row, int col) const {
  const int offset = row - col;
  if (!in_range(row) || !in_range(col) || offset > lower_ || offset < -upper_) return {};
  return diagonals_[slot(row, col)][static_cast<std::size_t>(col + half_width_)];
}

void TruncatedOperator::set(int row, int col, ScaledComplex value) {
  const int offset = row - col;
  if (!in_range(row) || !in_range(col) || offset > lower_ || offset < -upper_) {
    throw Error(ErrorKind::InvalidParams, fmt::format("entry ({}, {}) outside band or window", row, col));
  }
  diagonals_[slot(row, col)][static_cast<std::size_t>(col + half_width_)] = value;
}

TruncatedOperator TruncatedOperator::adjoint() const {
  TruncatedOperator out(half_width_, upper_, lower_);
  for (int row = -half_width_; row <= half_width_; ++row) {
    for (int col = std::max(-half_width_, row - lower_); col <= std::min(half_width_, row + upper_); ++col) {
      const ScaledComplex v = at(row, col);
      if (!v.is_zero()) out.set(col, row, v.conj());
    }
  }
  return out;
}

CoefficientVector TruncatedOperator::apply(const CoefficientVector& v) const {
  if (v.half_width() != half_width_) {
    throw Error(ErrorKind::InvalidParams, "vector and operator live on different windows");
  }
  CoefficientVector out(half_width_);
  for (int row = -half_width_; row <= half_width_; ++row) {
    ScaledComplex acc;
    for (int col = std::max(-half_width_, row - lower_); col <= std::min(half_width_, row + upper_); ++col) {
      acc += at(row, col) * v[col];
    }
    out[row] = acc;
  }
  return out;
}

double TruncatedOperator::max_abs_interior(int margin) const {
  const int edge = half_width_ - margin;
  double worst = 0.0;
  for (int row = -edge; row <= edge; ++row) {
    for (int col = std::max(-half_width_, row - lower_); col <= std::min(half_width_, row + upper_); ++col) {
      worst = std::max(worst, std::abs(at(row, col).value()));
    }
  }
  return worst;
}

TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  require_same_space(a, b);
  const int J = a.half_width();
  TruncatedOperator out(J, a.lower() + b.lower(), a.upper() + b.upper());
  for (int row = -J; row <= J; ++row) {
    for (int col = std::max(-J, row - out.lower()); col <= std::min(J, row + out.upper()); ++col) {
      ScaledComplex acc;
      for (int k = std::max(-J, col - b.upper()); k <= std::min(J, col + b.lower()); ++k) {
        acc += a.at(row, k) * b.at(k, col);
      }
      if (!acc.is_zero()) out.set(row, col, acc);
    }
  }
  return out;
}

TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  return combine_entrywise(a, b, [](const ScaledComplex& x, const ScaledComplex& y) { return x + y; });
}

TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  return combine_entrywise(a, b, [](const ScaledComplex& x, const ScaledComplex& y) { return x - y; });
}

TruncatedOperator operator*(double factor, const TruncatedOperator& a) {
  TruncatedOperator out(a.half_width(), a.lower(), a.upper());
  const int J = a.half_width();
  for (int row = -J; row <= J; ++row) {
    for (int col = std::max(-J, row - a.lower()); col <= std::min(J, row + a.upper()); ++col) {
      const ScaledComplex v = a.at(row, col);
      if (!v.is_zero()) out.set(row, col, ScaledComplex{factor} * v);
    }
  }
  return out;
}

TruncatedOperator build_U(int half_width) {
  TruncatedOperator u(half_width, 1, 0);
  for (int j = -half_width; j < half_width; ++j) u.set(j + 1, j, ScaledComplex{1.0});
  return u;
}

TruncatedOperator build_Jq(int half_width, double q) {
  TruncatedOperator jq(half_width, 0, 0);
  const bool flat = is_undeformed(q);
  if (!(q > 0.0)) throw Error(ErrorKind::InvalidParams, fmt::format("q must be positive (q={:g})", q));
  for (int j = -half_width; j <= half_width; ++j) {
    const double value = flat ? static_cast<double>(j) : q_number(j, q);
    if (value != 0.0) jq.set(j, j, ScaledComplex{value});
  }
  return jq;
}

TruncatedOperator build_Zq(int half_width, const DeformationParams& params) {
  params.validate();
  TruncatedOperator z(half_width, 1, 0);
  const double s = params.s;
  if (params.undeformed()) {
    for (int j = -half_width; j < half_width; ++j) z.set(j + 1, j, ScaledComplex{1.0, -s * (j + 0.5)});
    return z;
  }
  const double lq = std::log(params.q);
  const double inv_minus_one = std::expm1(-lq);  // q^{-1} - 1
  const double log_prefactor = s / (1.0 - params.q) * (-inv_minus_one / lq - 1.0);
  const double kappa = s * inv_minus_one / lq;
  for (int j = -half_width; j < half_width; ++j) {
    z.set(j + 1, j, ScaledComplex{1.0, log_prefactor + kappa * q_number(j + 1, params.q)});
  }
  return z;
}

CoefficientVector coherent_state_vector(const StateLabel& label, const DeformationParams& params, int half_width) {
  require_half_width(half_width, 1);
  CoefficientVector c(half_width);
  double peak = -std::numeric_limits<double>::infinity();
  for (int j = -half_width; j <= half_width; ++j) {
    const LogTerm t = amplitude_log(j, label, params);
    c[j] = ScaledComplex::from_polar_log(t.log_magnitude, t.phase);
    peak = std::max(peak, t.log_magnitude);
  }
  const double edge = std::max(c[-half_width].log_abs(), c[half_width].log_abs());
  if (edge - peak > std::log(kCoefficientTailThreshold)) {
    throw Error(ErrorKind::WindowTooNarrow,
                fmt::format("coherent-state tail at |j|={} is {:g} of the peak (limit {:g})", half_width,
                            std::exp(edge - peak), kCoefficientTailThreshold));
  }
  return c;
}

double commutator_residual(double q, int half_width) {
  require_half_width(half_width, 4);
  const TruncatedOperator u = build_U(half_width);
  const TruncatedOperator jq = build_Jq(half_width, q);
  const TruncatedOperator r = q * (u * jq) - jq * u + u;
  return r.max_abs_interior(2);
}

double relative_commutator_residual(double q, int half_width) {
  require_half_width(half_width, 4);
  const TruncatedOperator u = build_U(half_width);
  const TruncatedOperator jq = build_Jq(half_width, q);
  const TruncatedOperator r = q * (u * jq) - jq * u + u;
  const int edge = half_width - 2;
  double worst = 0.0;
  for (int row = -edge; row <= edge; ++row) {
    const double scale = std::max({1.0, std::abs(q * jq.entry(row - 1, row - 1)), std::abs(jq.entry(row, row))});
    for (int col = row - r.lower(); col <= row + r.upper(); ++col) {
      worst = std::max(worst, std::abs(r.entry(row, col)) / scale);
    }
  }
  return worst;
}

double eigen_residual(const StateLabel& label, const DeformationParams& params, int half_width) {
  params.validate();
  require_half_width(half_width, 2);
  const CoefficientVector c = coherent_state_vector(label, params, half_width);
  const TruncatedOperator z = build_Zq(half_width, params);
  const CoefficientVector zc = z.apply(c);
  const double bracket = params.undeformed() ? label.l() : q_number(label.l(), params.q);
  const ScaledComplex xi = ScaledComplex::from_polar_log(-bracket, label.alpha());

  const int edge = half_width - z.band_width();
  std::vector<ScaledComplex> residual;
  std::vector<ScaledComplex> interior;
  for (int j = -edge; j <= edge; ++j) {
    residual.push_back(zc[j] - xi * c[j]);
    interior.push_back(c[j]);
  }
  return std::exp(0.5 * (log_sum_squares(residual) - log_sum_squares(interior)));
}

LaurentPoly jq_function_action(const LaurentPoly& f, double q) {
  LaurentPoly out;
  for (const auto& [power, c] : jackson_derivative(f, q)) out[power + 1] = c;
  return out;
}

}  // namespace qcircle
