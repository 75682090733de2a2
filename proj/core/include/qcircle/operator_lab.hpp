#pragma once

#include <complex>
#include <vector>

#include "qcircle/qmath.hpp"
#include "qcircle/scaled_complex.hpp"
#include "qcircle/states.hpp"

namespace qcircle {

/// Coefficients c_j for j in [-J, J].
class CoefficientVector {
 public:
  explicit CoefficientVector(int half_width);

  [[nodiscard]] int half_width() const noexcept { return half_width_; }
  [[nodiscard]] const ScaledComplex& operator[](int j) const { return coeffs_.at(static_cast<std::size_t>(j + half_width_)); }
  [[nodiscard]] ScaledComplex& operator[](int j) { return coeffs_.at(static_cast<std::size_t>(j + half_width_)); }

 private:
  int half_width_;
  std::vector<ScaledComplex> coeffs_;
};

/// Banded operator on span{|j> : |j| <= J}. Stored diagonal by diagonal;
/// offset = row - col runs over [-upper, lower].
class TruncatedOperator {
 public:
  TruncatedOperator(int half_width, int lower, int upper);

  [[nodiscard]] int half_width() const noexcept { return half_width_; }
  [[nodiscard]] int dimension() const noexcept { return 2 * half_width_ + 1; }
  [[nodiscard]] int lower() const noexcept { return lower_; }
  [[nodiscard]] int upper() const noexcept { return upper_; }
  [[nodiscard]] int band_width() const noexcept { return lower_ > upper_ ? lower_ : upper_; }

  /// Entry (row j, column j'); zero outside the band.
  [[nodiscard]] ScaledComplex at(int row, int col) const;
  [[nodiscard]] std::complex<double> entry(int row, int col) const { return at(row, col).value(); }
  void set(int row, int col, ScaledComplex value);

  [[nodiscard]] TruncatedOperator adjoint() const;
  [[nodiscard]] CoefficientVector apply(const CoefficientVector& v) const;

  /// max |entry| over rows with |j| <= J - margin.
  [[nodiscard]] double max_abs_interior(int margin) const;

  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b);
  friend TruncatedOperator operator*(double factor, const TruncatedOperator& a);

 private:
  [[nodiscard]] bool in_range(int j) const noexcept { return j >= -half_width_ && j <= half_width_; }
  [[nodiscard]] std::size_t slot(int row, int col) const;

  int half_width_;
  int lower_;
  int upper_;
  std::vector<std::vector<ScaledComplex>> diagonals_;  // [offset + upper][col + J]
};

inline constexpr int kAlgebraHalfWidth = 50;
inline constexpr int kEigenHalfWidth = 64;
/// |c_{+-J}| / max_j |c_j| allowed for a coherent state in a window.
inline constexpr double kCoefficientTailThreshold = 1e-12;

/// Shift U|j> = |j+1>.
[[nodiscard]] TruncatedOperator build_U(int half_width);

/// diag([j]_q); entries are exactly j inside the q = 1 band.
[[nodiscard]] TruncatedOperator build_Jq(int half_width, double q);

/// Z_q(s) from its factorized form
///   e^{(s/(1-q))((1-q^{-1})/ln q - 1)} e^{(s(q^{-1}-1)/ln q) J_q} U,
/// so entry (j+1, j) carries [j+1]_q. At q = 1 the entry is e^{-s(j+1/2)}.
[[nodiscard]] TruncatedOperator build_Zq(int half_width, const DeformationParams& params);

/// c_j = <j|l,alpha>_{s,q}; throws WindowTooNarrow when the edge coefficients
/// exceed kCoefficientTailThreshold relative to the peak.
[[nodiscard]] CoefficientVector coherent_state_vector(const StateLabel& label, const DeformationParams& params,
                                                      int half_width);

/// max |q U J_q - J_q U + U| over rows |j| <= J - 2 (J_q -> J at q = 1).
[[nodiscard]] double commutator_residual(double q, int half_width);

/// Same residual, each row divided by max(|q [j]_q|, |[j+1]_q|, 1).
[[nodiscard]] double relative_commutator_residual(double q, int half_width);

/// ||Z_q c - xi_q c|| / ||c|| over interior rows.
[[nodiscard]] double eigen_residual(const StateLabel& label, const DeformationParams& params,
                                    int half_width = kEigenHalfWidth);

/// x D_q f on a Fourier polynomial f(e^{i phi}); maps e_j to [j]_q e_j.
[[nodiscard]] LaurentPoly jq_function_action(const LaurentPoly& f, double q);

}  // namespace qcircle
