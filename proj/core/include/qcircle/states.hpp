#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcircle/series.hpp"

namespace qcircle {

/// Deformation q > 0 and squeeze s > 0. q = 1 selects the theta-function
/// closed forms, s = 1 the base coherent-state family.
struct DeformationParams {
  double q = 1.0;
  double s = 1.0;

  /// Throws Error{InvalidParams} unless q > 0 and s > 0 (both finite).
  void validate() const;
  [[nodiscard]] bool undeformed() const noexcept;
};

/// Coherent-state label (l, alpha); alpha is kept in [0, 2 pi).
class StateLabel {
 public:
  StateLabel(double l, double alpha);

  [[nodiscard]] double l() const noexcept { return l_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }

 private:
  double l_;
  double alpha_;
};

/// Point of the projected phase space, (x, y) = |xi_q| (cos alpha, sin alpha).
struct PhaseSpacePoint {
  double x;
  double y;
};

enum class NormalizationKind { DiscreteSum, AngularDensity };

struct DistributionTable {
  std::vector<double> support;
  std::vector<double> weights;
  NormalizationKind normalization_kind;
};

/// Index of the largest weight (first one on ties).
[[nodiscard]] std::size_t argmax(const DistributionTable& table);

/// Inclusive window of basis indices.
struct JWindow {
  std::int64_t lo = -64;
  std::int64_t hi = 64;
};

inline constexpr double kDistributionTailMass = 1e-10;
inline constexpr int kDefaultPhiGrid = 512;

/// xi_q = exp(-[l]_q + i alpha).
[[nodiscard]] std::complex<double> xi_from_label(const StateLabel& label, const DeformationParams& params);

/// Inverse of xi_from_label; throws InvalidParams when xi lies in the
/// excluded region of the deformed phase space.
[[nodiscard]] StateLabel label_from_xi(std::complex<double> xi, const DeformationParams& params);

[[nodiscard]] PhaseSpacePoint phase_space_point(const StateLabel& label, const DeformationParams& params);

/// <j|l,alpha>_{s,q} in log-polar form: log-magnitude
///   j [l]_q - (s/ln q) [j]_q - s j/(1-q)     (q = 1: l j - s j^2/2)
/// and phase -j alpha.
[[nodiscard]] LogTerm amplitude_log(std::int64_t j, const StateLabel& label, const DeformationParams& params);

/// <j|l,alpha>_{s,q}; throws Overflow if it does not fit in a double.
[[nodiscard]] std::complex<double> amplitude(std::int64_t j, const StateLabel& label, const DeformationParams& params);

// The series-valued quantities below throw NotConvergent when the
// convergence gate says divergent and Boundary inside the boundary band.
// s = 1 and q = 1 are convergent for every l.

[[nodiscard]] SeriesValue norm_squared_series(const StateLabel& label, const DeformationParams& params,
                                              const SeriesOptions& options = {});
[[nodiscard]] double norm_squared(const StateLabel& label, const DeformationParams& params,
                                  const SeriesOptions& options = {});

/// <label1|label2>_{s,q}; label1 is the bra.
[[nodiscard]] SeriesValue overlap_series(const StateLabel& label1, const StateLabel& label2,
                                         const DeformationParams& params, const SeriesOptions& options = {});
[[nodiscard]] std::complex<double> overlap(const StateLabel& label1, const StateLabel& label2,
                                           const DeformationParams& params, const SeriesOptions& options = {});

/// <phi|l,alpha>_{s,q}.
[[nodiscard]] SeriesValue wavefunction_series(double phi, const StateLabel& label, const DeformationParams& params,
                                              const SeriesOptions& options = {});
[[nodiscard]] std::complex<double> wavefunction(double phi, const StateLabel& label, const DeformationParams& params,
                                                const SeriesOptions& options = {});

/// <J_q> in the normalized state.
[[nodiscard]] double expectation_Jq(const StateLabel& label, const DeformationParams& params,
                                    const SeriesOptions& options = {});

/// <U> in the normalized state; its argument is alpha.
[[nodiscard]] std::complex<double> expectation_U(const StateLabel& label, const DeformationParams& params,
                                                 const SeriesOptions& options = {});

/// <U>_(l,alpha) / <U>_(l,0), which is e^{i alpha}.
[[nodiscard]] std::complex<double> relative_expectation_U(const StateLabel& label, const DeformationParams& params,
                                                          const SeriesOptions& options = {});

/// p(j) = |<j|l,alpha>|^2 / <l,alpha|l,alpha>. With no window the default
/// [-64, 64] is doubled until the omitted mass drops below 1e-10; an explicit
/// window is used as given and throws WindowTooNarrow if it is too small.
[[nodiscard]] DistributionTable dist_j(const StateLabel& label, const DeformationParams& params,
                                       std::optional<JWindow> window = std::nullopt,
                                       const SeriesOptions& options = {});

/// p(phi) = |<phi|l,alpha>|^2 / <l,alpha|l,alpha> on phi_k = 2 pi k / grid_size.
[[nodiscard]] DistributionTable dist_phi(const StateLabel& label, const DeformationParams& params,
                                         int grid_size = kDefaultPhiGrid, const SeriesOptions& options = {});

}  // namespace qcircle
