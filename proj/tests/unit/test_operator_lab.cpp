#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "oracle/mp_oracle.hpp"
#include "qcircle/error.hpp"
#include "qcircle/operator_lab.hpp"

using namespace qcircle;
using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected qcircle::Error");
  return ErrorKind::InvalidParams;
}

}  // namespace

TEST_CASE("build_U") {
  const TruncatedOperator u = build_U(1);
  CHECK(u.dimension() == 3);
  for (int r = -1; r <= 1; ++r) {
    for (int c = -1; c <= 1; ++c) CHECK(u.entry(r, c) == cd{r == c + 1 ? 1.0 : 0.0, 0.0});
  }
  CHECK(kind_of([] { (void)build_U(0); }) == ErrorKind::InvalidParams);

  CoefficientVector e0(5);
  e0[0] = ScaledComplex(cd{1.0, 0.0});
  const CoefficientVector out = build_U(5).apply(e0);
  for (int j = -5; j <= 5; ++j) CHECK(out[j].value() == cd{j == 1 ? 1.0 : 0.0, 0.0});

  const TruncatedOperator big = build_U(10);
  const TruncatedOperator id = big.adjoint() * big;
  for (int r = -9; r <= 9; ++r) {
    for (int c = -10; c <= 10; ++c) CHECK(id.entry(r, c) == cd{r == c ? 1.0 : 0.0, 0.0});
  }
}

TEST_CASE("build_Jq") {
  const TruncatedOperator j1 = build_Jq(2, 1.0);
  for (int j = -2; j <= 2; ++j) CHECK(j1.entry(j, j) == cd{static_cast<double>(j), 0.0});
  CHECK(build_Jq(2, 1.0 + 1e-9).entry(-2, -2).real() == -2.0);
  CHECK(build_Jq(3, 0.5).entry(2, 2).real() == 1.5);
  CHECK(build_Jq(3, 0.5).entry(2, 1) == cd{0.0, 0.0});
  for (const double q : {0.5, 2.0}) {
    const TruncatedOperator jq = build_Jq(20, q);
    for (int j = -20; j < 20; ++j) CHECK(jq.entry(j + 1, j + 1).real() > jq.entry(j, j).real());
  }
  // spectrum bounds
  for (const double q : {0.2, 0.5, 0.9}) {
    const TruncatedOperator jq = build_Jq(50, q);
    for (int j = -50; j <= 50; ++j) CHECK(jq.entry(j, j).real() <= 1.0 / (1.0 - q));
  }
  for (const double q : {1.1, 2.0, 5.0}) {
    const TruncatedOperator jq = build_Jq(50, q);
    for (int j = -50; j <= 50; ++j) CHECK(jq.entry(j, j).real() >= -1.0 / (q - 1.0));
  }
  CHECK(kind_of([] { (void)build_Jq(3, -1.0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("build_Zq") {
  SUBCASE("q = 1 entries") {
    const TruncatedOperator z = build_Zq(10, {1.0});
    for (int j = -9; j <= 10; ++j) CHECK(z.entry(j, j - 1).real() == doctest::Approx(std::exp(-(j - 0.5))).epsilon(1e-14));
    const TruncatedOperator z2 = build_Zq(10, {1.0, 2.5});
    for (int j = -10; j < 10; ++j) CHECK(z2.entry(j + 1, j).real() == doctest::Approx(std::exp(-2.5 * (j + 0.5))).epsilon(1e-14));
  }
  SUBCASE("near q = 1 the entries approach the undeformed ones") {
    const TruncatedOperator z = build_Zq(10, {1.0 + 1e-5});
    for (int j = -9; j <= 10; ++j) CHECK(z.entry(j, j - 1).real() == doctest::Approx(std::exp(-(j - 0.5))).epsilon(1e-3));
  }
  SUBCASE("positive single band") {
    for (const DeformationParams p : {DeformationParams{0.5}, DeformationParams{3.0, 0.4}, DeformationParams{1.0}}) {
      const TruncatedOperator z = build_Zq(30, p);
      for (int j = -30; j < 30; ++j) {
        CHECK(z.at(j + 1, j).log_abs() > -std::numeric_limits<double>::infinity());
        CHECK(z.at(j + 1, j).arg() == 0.0);
        CHECK(z.entry(j, j) == cd{0.0, 0.0});
      }
    }
  }
  SUBCASE("consecutive ratio at q = 0.5") {
    using oracle::Real;
    const Real q(0.5);
    const TruncatedOperator z = build_Zq(20, {0.5});
    for (int j = -20; j < 19; ++j) {
      const Real expected = exp((1 / q - 1) * pow(q, j + 1) / log(q));
      const double log_ratio = z.at(j + 2, j + 1).log_abs() - z.at(j + 1, j).log_abs();
      CHECK(log_ratio == doctest::Approx(static_cast<double>(log(expected))).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("commutator residual") {
  CHECK(commutator_residual(0.5, kAlgebraHalfWidth) <= 1e-12);
  CHECK(commutator_residual(1.0, kAlgebraHalfWidth) <= 1e-12);
  CHECK(commutator_residual(2.0, 20) <= 1e-9);
  CHECK(relative_commutator_residual(2.0, 20) <= 1e-15);
  CHECK(relative_commutator_residual(0.3, kAlgebraHalfWidth) <= 1e-15);
  CHECK(kind_of([] { (void)commutator_residual(0.5, 3); }) == ErrorKind::InvalidParams);

  // same identity row by row in extended precision: (q U J_q - J_q U + U)_{j+1,j} = q[j]_q - [j+1]_q + 1
  using oracle::Real;
  for (const double qd : {0.5, 2.0}) {
    const Real q(qd);
    Real worst = 0;
    for (int j = -20; j < 20; ++j) {
      const Real r = abs(q * oracle::qnum(Real(j), q) - oracle::qnum(Real(j + 1), q) + 1);
      if (r > worst) worst = r;
    }
    CHECK(worst < Real(1e-40));
  }
}

TEST_CASE("coherent-state eigen residual") {
  CHECK(eigen_residual({1.0, 0.0}, {0.5}) <= 1e-10);
  CHECK(eigen_residual({0.5, kPi / 2}, {1.0}) <= 1e-10);
  CHECK(eigen_residual({1.0, 1.0}, {0.7, 2.0}) <= 1e-10);
  CHECK(eigen_residual({0.7, 2.5}, {3.0}) <= 1e-10);

  double previous = eigen_residual({1.0, 0.3}, {0.5}, 32);
  for (const int j : {40, 48, 64}) {
    const double r = eigen_residual({1.0, 0.3}, {0.5}, j);
    CHECK(r <= previous * (1.0 + 1e-12) + 1e-16);
    previous = r;
  }
  CHECK(kind_of([] { (void)eigen_residual({2.0, 0.0}, {1.0}, 3); }) == ErrorKind::WindowTooNarrow);
}

TEST_CASE("coherent_state_vector matches the amplitudes") {
  const StateLabel label{0.8, 1.2};
  const DeformationParams p{2.0};
  const CoefficientVector c = coherent_state_vector(label, p, 40);
  for (int j = -40; j <= 40; ++j) {
    const cd a = amplitude(j, label, p);
    if (std::abs(a) > 1e-300) CHECK(std::abs(c[j].value() - a) <= 1e-13 * std::abs(a));
  }
}

TEST_CASE("Jackson action on Fourier monomials matches J_q") {
  for (const double q : {0.3, 0.5, 2.0, 4.0}) {
    const TruncatedOperator jq = build_Jq(30, q);
    for (int j = -30; j <= 30; ++j) {
      const LaurentPoly out = jq_function_action(LaurentPoly{{j, {1.0, 0.0}}}, q);
      const double expected = jq.entry(j, j).real();
      if (j == 0) {
        CHECK(out.empty());
        continue;
      }
      REQUIRE(out.size() == 1);
      CHECK(out.begin()->first == j);
      CHECK(std::abs(out.begin()->second - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}
