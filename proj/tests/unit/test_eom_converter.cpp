#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mwqi/config.hpp"
#include "mwqi/eom_converter.hpp"
#include "mwqi/errors.hpp"
#include "test_support.hpp"

using namespace mwqi;
using mwqi::testing::close_rel;

namespace {

bool close_c(complex a, complex b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool all_close(const IoCoefficients& x, const IoCoefficients& y, double tol) {
  return close_c(x.a_w, y.a_w, tol) && close_c(x.a_o, y.a_o, tol) && close_c(x.b, y.b, tol) &&
         close_c(x.c_w, y.c_w, tol) && close_c(x.c_o, y.c_o, tol) && close_c(x.d_w, y.d_w, tol) &&
         close_c(x.d_o, y.d_o, tol) && close_c(x.e_w, y.e_w, tol) && close_c(x.e_o, y.e_o, tol);
}

void check_commutators(const IoCoefficients& c, double tol) {
  CHECK(std::abs(commutator_w(c) - 1.0) < tol);
  CHECK(std::abs(commutator_o(c) - 1.0) < tol);
  CHECK(std::abs(cross_commutator(c)) < tol);
}

ConverterRates preset_rates() { return converter_rates(fig2_preset().params); }

}  // namespace

TEST_CASE("undriven converter is a passthrough") {
  const IoCoefficients c = coefficients_lossless(0.0, 0.0);
  CHECK(c.a_w == complex(1.0));
  CHECK(c.a_o == complex(1.0));
  CHECK(c.b == complex(0.0));
  CHECK(c.c_w == complex(0.0));
  CHECK(c.c_o == complex(0.0));
  CHECK(c.fidelity == Fidelity::lossless_narrowband);
}

TEST_CASE("lossless coefficients at (2, 1) by hand") {
  const IoCoefficients c = coefficients_lossless(2.0, 1.0);
  CHECK(close_c(c.a_w, -1.0, 1e-15));
  CHECK(close_c(c.a_o, 2.0, 1e-15));
  CHECK(close_c(c.b, std::sqrt(2.0), 1e-15));
  CHECK(close_c(c.c_w, complex(0.0, std::sqrt(2.0)), 1e-15));
  CHECK(close_c(c.c_o, complex(0.0, 1.0), 1e-15));
  CHECK(c.d_w == complex(0.0));
  CHECK(c.d_o == complex(0.0));
  CHECK(c.e_w == complex(0.0));
  CHECK(c.e_o == complex(0.0));
  check_commutators(c, 1e-12);
}

TEST_CASE("lossless coefficients at the detection point") {
  const IoCoefficients c = coefficients_lossless(5181.95, 668.43);
  CHECK(close_rel(c.b.real(), 0.82450442369313617, 1e-13));
  CHECK(close_rel(std::norm(c.c_w), 0.0010170212957071804, 1e-12));
  check_commutators(c, 1e-12);
}

TEST_CASE("lossy model with full in-coupling equals the lossless model") {
  testing::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_stable_point(rng, Fidelity::lossless_narrowband);
    const IoCoefficients a = coefficients_lossless(p.gamma_w, p.gamma_o);
    const IoCoefficients b = coefficients_lossy(p.gamma_w, p.gamma_o, KappaRatios{1.0, 1.0});
    CHECK(all_close(a, b, 1e-13));
    CHECK(b.d_w == complex(0.0));
    CHECK(b.e_o == complex(0.0));
  }
}

TEST_CASE("lossy model with half in-coupling and no drive") {
  const IoCoefficients c = coefficients_lossy(0.0, 0.0, KappaRatios{0.5, 1.0});
  CHECK(std::abs(c.a_w) < 1e-15);
  check_commutators(c, 1e-12);
}

TEST_CASE("commutators hold for random draws at every fidelity") {
  testing::Rng rng(22);
  for (Fidelity f : {Fidelity::lossless_narrowband, Fidelity::lossy_narrowband, Fidelity::full_spectral}) {
    CAPTURE(to_string(f));
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto p = testing::random_stable_point(rng, f);
      const IoCoefficients c = coefficients(f, p.gamma_w, p.gamma_o, p.rates, p.ratios, p.omega);
      // Near the boundary |B|^2 reaches 1e8, so the defect is bounded
      // relative to the size of the cancelling terms.
      const double scale = std::max(1.0, std::norm(c.a_w) + std::norm(c.a_o) + 2.0 * std::norm(c.b) +
                                             std::norm(c.c_w) + std::norm(c.c_o) + std::norm(c.d_w) +
                                             std::norm(c.d_o) + std::norm(c.e_w) + std::norm(c.e_o));
      const bool ok = std::abs(commutator_w(c) - 1.0) < 1e-10 * scale &&
                      std::abs(commutator_o(c) - 1.0) < 1e-10 * scale && std::abs(cross_commutator(c)) < 1e-10 * scale;
      if (!ok) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("spectral coefficients at zero frequency reduce to the lossy model") {
  testing::Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_stable_point(rng, Fidelity::lossy_narrowband);
    const IoCoefficients s = coefficients_spectral(p.gamma_w, p.gamma_o, p.rates, p.ratios, 0.0);
    const IoCoefficients l = coefficients_lossy(p.gamma_w, p.gamma_o, p.ratios);
    CHECK(all_close(s, l, 1e-12));
  }
}

TEST_CASE("spectral coefficients match a direct Langevin solve") {
  testing::Rng rng(24);
  for (int i = 0; i < 500; ++i) {
    const auto p = testing::random_stable_point(rng, Fidelity::full_spectral);
    const IoCoefficients s = coefficients_spectral(p.gamma_w, p.gamma_o, p.rates, p.ratios, p.omega);
    const IoCoefficients d = testing::langevin_coefficients(p);
    CAPTURE(p.gamma_w);
    CAPTURE(p.gamma_o);
    CAPTURE(p.omega);
    CHECK(all_close(s, d, 1e-9));
  }
}

TEST_CASE("far off resonance the converter reflects the microwave input") {
  const ConverterRates r = preset_rates();
  const double omega = 1e6 * r.kappa_w;
  const IoCoefficients c = coefficients_spectral(5181.95, 668.43, r, KappaRatios{}, omega);
  CHECK(close_c(c.a_w, -1.0, 1e-5));
  CHECK(std::abs(c.b) < 1e-6);
  check_commutators(c, 1e-10);
}

TEST_CASE("commutators hold across a sideband sweep") {
  const ConverterRates r = preset_rates();
  for (int k = 0; k <= 400; ++k) {
    const double omega = -r.kappa_o + 2.0 * r.kappa_o * k / 400.0;
    const IoCoefficients c = coefficients_spectral(5181.95, 668.43, r, KappaRatios{0.9, 0.8}, omega);
    check_commutators(c, 1e-9);
  }
}

TEST_CASE("B is symmetric under exchanging the two cavities") {
  testing::Rng rng(25);
  for (int i = 0; i < 1000; ++i) {
    const double a = testing::log_uniform(rng, 1e-3, 1e4);
    const double b = testing::log_uniform(rng, 1e-3, 1e4);
    if (std::abs(1.0 + a - b) < 1e-6 * (a + b) || std::abs(1.0 + b - a) < 1e-6 * (a + b)) continue;
    const double lhs = coefficients_lossless(a, b).b.real() * (1.0 + a - b);
    const double rhs = coefficients_lossless(b, a).b.real() * (1.0 + b - a);
    CHECK(close_rel(lhs, rhs, 1e-12));
  }
}

TEST_CASE("singular denominator raises") {
  CHECK_THROWS_AS(coefficients_lossless(2.0, 3.0), SingularOperatingPoint);
  CHECK_THROWS_AS(coefficients_lossy(2.0, 3.0, KappaRatios{0.5, 0.5}), SingularOperatingPoint);
  CHECK_THROWS_AS(coefficients_spectral(2.0, 3.0, preset_rates(), KappaRatios{}, 0.0), SingularOperatingPoint);
  CHECK_THROWS_AS(coefficients_lossless(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(coefficients_lossy(1.0, 0.0, KappaRatios{1.5, 1.0}), DomainError);
}

TEST_CASE("stability examples") {
  const ConverterRates r = preset_rates();
  const StabilityReport s = stability(0.0, 0.5, r);
  CHECK(s.stable);
  CHECK(s.margin > 0.0);
  CHECK(s.narrowband_condition);
  CHECK(testing::numeric_margin(0.0, 0.5, r) > 0.0);

  const StabilityReport u = stability(1.0, 3.0, r);
  CHECK_FALSE(u.stable);
  CHECK(u.margin < 0.0);
  CHECK_FALSE(u.narrowband_condition);
  CHECK(testing::numeric_margin(1.0, 3.0, r) < 0.0);
}

TEST_CASE("constant cubic coefficient vanishes on the narrowband boundary") {
  const ConverterRates r = preset_rates();
  for (double gw : {0.0, 1.0, 10.0, 517.3, 5181.95}) {
    const Cubic p = characteristic_cubic(gw, 1.0 + gw, r);
    const double scale = r.kappa_w * r.kappa_o * r.gamma_m * (1.0 + 2.0 * gw);
    CHECK(std::abs(p.a0) < 1e-12 * scale);
    const double expected = r.kappa_w * r.kappa_o * r.gamma_m * (1.0 + gw - 0.5 * gw);
    CHECK(close_rel(characteristic_cubic(gw, 0.5 * gw, r).a0, expected, 1e-12));
    const StabilityReport s = stability(gw, 1.0 + gw, r);
    CHECK_FALSE(s.stable);
    CHECK(std::abs(s.margin) < 1e-9 * r.kappa_w);
  }
}

TEST_CASE("cubic coefficients match the numeric characteristic polynomial") {
  testing::Rng rng(26);
  for (int i = 0; i < 500; ++i) {
    const ConverterRates r = testing::random_rates(rng);
    const double gw = testing::log_uniform(rng, 1e-3, 1e4);
    const double go = testing::uniform(rng, 0.0, 2.0 * (1.0 + gw));
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(testing::langevin_drift(gw, go, r), false);
    const auto l = es.eigenvalues();
    const Cubic p = characteristic_cubic(gw, go, r);
    const complex a2 = -(l(0) + l(1) + l(2));
    const complex a1 = l(0) * l(1) + l(0) * l(2) + l(1) * l(2);
    const complex a0 = -(l(0) * l(1) * l(2));
    CHECK(close_rel(p.a2, a2.real(), 1e-9));
    CHECK(close_rel(p.a1, a1.real(), 1e-9, 1e-9 * std::abs(a2 * a2)));
    CHECK(close_rel(p.a0, a0.real(), 1e-8, 1e-9 * std::abs(a2 * a2 * a2)));
  }
}

TEST_CASE("Routh-Hurwitz verdict agrees with drift eigenvalues") {
  testing::Rng rng(27);
  int compared = 0;
  int disagreements = 0;
  int stable_count = 0;
  for (int i = 0; i < 10000; ++i) {
    const ConverterRates r = testing::random_rates(rng);
    const double gw = testing::uniform(rng, 0.0, 1.0) < 0.5 ? testing::uniform(rng, 0.0, 1e4)
                                                            : testing::log_uniform(rng, 1e-3, 1e4);
    const double go = testing::uniform(rng, 0.0, 2.0 * (1.0 + gw));
    const double numeric = testing::numeric_margin(gw, go, r);
    if (std::abs(numeric) < 1e-9 * r.kappa_w) continue;
    ++compared;
    const StabilityReport s = stability(gw, go, r);
    const bool expected = numeric > 0.0;
    if (routh_hurwitz_stable(characteristic_cubic(gw, go, r)) != expected || s.stable != expected) ++disagreements;
    if (expected) ++stable_count;
    CHECK(s.stable == (s.margin > 0.0));
    CHECK(close_rel(s.margin, numeric, 1e-6, 1e-9 * r.kappa_w));
  }
  CHECK(compared > 9900);
  CHECK(stable_count > 2000);
  CHECK(disagreements == 0);
}

TEST_CASE("cubic roots of known polynomials") {
  // (x + 1)(x + 2)(x + 3)
  auto r = cubic_roots(Cubic{6.0, 11.0, 6.0});
  std::vector<double> re = {r[0].real(), r[1].real(), r[2].real()};
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(re[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(re[2] == doctest::Approx(-1.0).epsilon(1e-12));
  // (x - 1)(x^2 + 1)
  r = cubic_roots(Cubic{-1.0, 1.0, -1.0});
  double max_re = -1e9;
  for (auto z : r) max_re = std::max(max_re, z.real());
  CHECK(max_re == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cubic_roots(Cubic{}) == std::array<complex, 3>{});
}

TEST_CASE("stability boundary on the preset grid sits at Gamma_o = 1 + Gamma_w") {
  const ConverterRates r = preset_rates();
  for (int i = 0; i < 101; ++i) {
    const double gw = 100.0 * i;
    // Bisect the first unstable Gamma_o.
    double lo = 0.0;
    double hi = 3.0 * (1.0 + gw);
    REQUIRE(stability(gw, lo, r).stable);
    REQUIRE_FALSE(stability(gw, hi, r).stable);
    for (int k = 0; k < 100; ++k) {
      const double mid = 0.5 * (lo + hi);
      (stability(gw, mid, r).stable ? lo : hi) = mid;
    }
    CHECK(close_rel(hi, 1.0 + gw, 1e-6));
  }
}
