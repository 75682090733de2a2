// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracle/mp_oracle.hpp"
#include "qcircle/error.hpp"
#include "qcircle/operator_lab.hpp"
#include "qcircle/qmath.hpp"
#include "qcircle/series.hpp"
#include "qcircle/states.hpp"

using namespace qcircle;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

Outcome algebra_identity() {
  bool pass = true;
  std::string detail;
  for (const double q : {0.3, 0.5, 2.0, 1.0}) {
    const double r = commutator_residual(q, kAlgebraHalfWidth);
    pass = pass && r <= 1e-12;
    detail += "q=" + fmt_g(q) + ": " + fmt_g(r);
    if (r > 1e-12) detail += " (relative " + fmt_g(relative_commutator_residual(q, kAlgebraHalfWidth)) + ")";
    detail += "; ";
  }
  return {pass, detail + "limit 1e-12"};
}

Outcome eigen_relation() {
  struct Case {
    double q, s, l, alpha;
  };
  double worst = 0.0;
  for (const Case& c : {Case{0.5, 1, 1, 0}, Case{0.5, 1, 2, kPi}, Case{2, 1, -1, 1}, Case{0.7, 2, 1, 1},
                        Case{1, 1, 0.5, kPi / 2}}) {
    worst = std::max(worst, eigen_residual({c.l, c.alpha}, {c.q, c.s}, kEigenHalfWidth));
  }
  return {worst <= 1e-10, "max residual " + fmt_g(worst) + ", limit 1e-10"};
}

Outcome deformed_relative_error() {
  double worst = 0.0;
  for (int k = 3; k <= 30; ++k) {
    const double l = 0.1 * k;
    worst = std::max(worst, std::abs(expectation_Jq({l, 0.0}, {0.5}) / q_number(l, 0.5) - 1.0));
  }
  return {worst <= 0.02, "max relative error " + fmt_g(worst) + ", limit 0.02"};
}

Outcome undeformed_exactness() {
  double exact = 0.0;
  for (const double l : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
    exact = std::max(exact, std::abs(expectation_Jq({l, 0.0}, {1.0}) - l));
  }
  double worst = 0.0;
  for (int k = 5; k <= 60; ++k) {
    const double l = 0.05 * k;
    worst = std::max(worst, std::abs(expectation_Jq({l, 0.0}, {1.0}) / l - 1.0));
  }
  return {exact <= 1e-10 && worst <= 0.002,
          "integer/half-integer max " + fmt_g(exact) + " (limit 1e-10), grid max relative " + fmt_g(worst) +
              " (limit 0.002)"};
}

Outcome classical_angle() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> qs(0.2, 5.0), ls(-1.5, 2.5), as(0.0, 2 * kPi);
  double worst = 0.0;
  int n = 0;
  while (n < 20) {
    const double q = qs(rng);
    const double l = ls(rng);
    const double a = as(rng);
    if (is_undeformed(q)) continue;
    ++n;
    worst = std::max(worst, std::abs(relative_expectation_U({l, a}, {q}) - std::polar(1.0, a)));
  }
  return {worst <= 1e-12, "max |rel<U> - e^{i alpha}| " + fmt_g(worst) + " over 20 samples, limit 1e-12"};
}

Outcome j_distribution_shape() {
  const DistributionTable t = dist_j({2.0, 0.0}, {0.5});
  const auto p = [&](double j) {
    return t.weights[static_cast<std::size_t>(std::find(t.support.begin(), t.support.end(), j) - t.support.begin())];
  };
  const double peak = t.support[argmax(t)];
  const double asym = std::abs(p(3.0) / p(1.0) - 1.0);
  return {peak == 2.0 && asym > 1e-6, "argmax j=" + fmt_g(peak) + ", |p(3)/p(1) - 1| = " + fmt_g(asym)};
}

Outcome angular_density_shape() {
  const DistributionTable t = dist_phi({1.0, kPi}, {0.5}, 512);
  const double step = 2 * kPi / 512;
  const double off = std::abs(t.support[argmax(t)] - kPi);
  double integral = 0.0;
  for (const double w : t.weights) integral += w * step;
  integral /= 2 * kPi;
  return {off <= step && std::abs(integral - 1.0) <= 1e-6,
          "argmax offset " + fmt_g(off) + " (step " + fmt_g(step) + "), integral - 1 = " + fmt_g(integral - 1.0)};
}

Outcome gaussian_approximation() {
  double worst = 0.0;
  for (const double l : {0.0, 0.5, 1.0, 2.0}) {
    const DistributionTable t = dist_j({l, 0.0}, {1.0});
    for (std::size_t i = 0; i < t.support.size(); ++i) {
      const double j = t.support[i];
      worst = std::max(worst, std::abs(t.weights[i] - std::exp(-(j - l) * (j - l)) / std::sqrt(kPi)));
    }
  }
  return {worst <= 1e-3, "max deviation " + fmt_g(worst) + ", limit 1e-3"};
}

Outcome limit_continuity() {
  const cd tau{0.0, 1.0 / kPi};
  const cd tau_half{0.0, 0.5 / kPi};
  double worst = 0.0;
  for (const double q : {1.0 - 1e-4, 1.0 + 1e-4}) {
    const DeformationParams p{q};
    for (const double l : {0.0, 1.0, 2.0}) {
      for (const double a : {0.0, kPi / 2}) {
        const StateLabel la{l, a};
        worst = std::max(worst, rel(norm_squared(la, p), theta3({0.0, l / kPi}, tau)));
        for (const double h : {0.0, 1.0, 2.0}) {
          for (const double b : {0.0, kPi / 2}) {
            const cd closed = theta3({(a - b) / (2 * kPi), -(l + h) / (2 * kPi)}, tau);
            worst = std::max(worst, rel(overlap(la, {h, b}, p), closed));
          }
        }
        for (const double phi : {0.0, 1.0, kPi}) {
          const cd closed = theta3({(phi - a) / (2 * kPi), -l / (2 * kPi)}, tau_half);
          worst = std::max(worst, rel(wavefunction(phi, la, p), closed));
        }
      }
    }
  }
  return {worst <= 1e-3, "max relative deviation " + fmt_g(worst) + ", limit 1e-3"};
}

Outcome convergence_gate_map() {
  const double q = 0.5;
  int compared = 0, skipped = 0, mismatched = 0;
  bool s_one_ok = true;
  for (const double s : {0.25, 0.5, 0.75, 1.0, 1.5}) {
    const DeformationParams p{q, s};
    for (int k = 0; k <= 20; ++k) {
      const double l = -2.0 + 0.25 * k;
      const ConvergenceVerdict v = convergence_gate(q, l, s);
      const StateLabel label{l, 0.0};
      const Convergence empirical =
          ratio_test([&](std::int64_t j) { return LogTerm{2.0 * amplitude_log(j, label, p).log_magnitude}; });
      if (s == 1.0) s_one_ok = s_one_ok && v.status == Convergence::Convergent && empirical == Convergence::Convergent;
      if (std::abs(v.gate_value) < kDefaultBoundaryBand) {
        ++skipped;
        continue;
      }
      ++compared;
      if (v.status != empirical) ++mismatched;
    }
  }
  return {mismatched == 0 && s_one_ok && compared > 0,
          std::to_string(compared) + " points compared, " + std::to_string(mismatched) + " mismatched, " +
              std::to_string(skipped) + " in the boundary band; s=1 all convergent: " + (s_one_ok ? "yes" : "no")};
}

Outcome theta_cross_checks() {
  double worst_u = 0.0;
  const cd tau_dual{0.0, kPi};
  for (const double l : {0.3, 0.7, 1.2}) {
    const double first = std::abs(expectation_U({l, 0.0}, {1.0}));
    const double second = std::exp(-0.25) * (theta3(l + 0.5, tau_dual) / theta3(l, tau_dual)).real();
    worst_u = std::max(worst_u, std::abs(first - second));
  }
  double worst_j = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double l = 0.1 * k;
    const cd e2 = std::polar(1.0, 2 * kPi * l);
    cd sum{};
    for (int n = 1; n <= 10; ++n) {
      const double p = std::exp(-kPi * kPi * (2 * n - 1));
      sum += p / ((1.0 + p * e2) * (1.0 + p * std::conj(e2)));
    }
    const double series = l - 2 * kPi * std::sin(2 * kPi * l) * sum.real();
    worst_j = std::max(worst_j, std::abs(theta3_log_derivative(l) - series));
  }
  return {worst_u <= 1e-8 && worst_j <= 1e-8,
          "<U> forms differ by " + fmt_g(worst_u) + ", <J> forms by " + fmt_g(worst_j) + ", limit 1e-8"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> qs(0.2, 5.0), ss(0.5, 2.0), ls(-1.5, 2.5), as(0.0, 2 * kPi);
  double worst = 0.0;
  int n = 0;
  while (n < 10) {
    const double q = qs(rng), s = ss(rng);
    const StateLabel a{ls(rng), as(rng)}, b{ls(rng), as(rng)};
    const double phi = as(rng);
    if (std::abs(q - 1.0) < 0.05) continue;
    if (std::pow(q, a.l()) - (1.0 - s) < 0.3 || std::pow(q, b.l()) - (1.0 - s) < 0.3) continue;
    if (!oracle::window_suffices(a.l(), q, s) || !oracle::window_suffices(b.l(), q, s)) continue;
    ++n;
    const DeformationParams p{q, s};
    const double norm = norm_squared(a, p);
    worst = std::max(worst, std::abs(norm - oracle::norm_squared(a.l(), q, s)) / norm);
    worst = std::max(worst, rel(overlap(a, b, p), oracle::overlap(a.l(), a.alpha(), b.l(), b.alpha(), q, s)));
    worst = std::max(worst, rel(wavefunction(phi, a, p), oracle::wavefunction(phi, a.l(), a.alpha(), q, s)));
  }
  return {worst <= 1e-12, "max relative deviation " + fmt_g(worst) + " over 10 sets, limit 1e-12"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"algebra identity", algebra_identity},
      {"eigen-relation", eigen_relation},
      {"deformed <J_q> relative error", deformed_relative_error},
      {"undeformed <J> exactness", undeformed_exactness},
      {"classical angle", classical_angle},
      {"j distribution peak and asymmetry", j_distribution_shape},
      {"angular density peak and normalization", angular_density_shape},
      {"gaussian approximation", gaussian_approximation},
      {"q -> 1 continuity", limit_continuity},
      {"convergence gate", convergence_gate_map},
      {"theta cross-checks", theta_cross_checks},
      {"oracle equivalence", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-40s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
