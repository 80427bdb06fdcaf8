#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qar/spectra.hpp"

using namespace qar;

namespace {

BathSpec ohmic_bath(double T, double kappa = 0.005, double p = 1.0, double cutoff = 1000.0) {
  BathSpec b;
  b.temperature = T;
  b.kappa = kappa;
  b.ohmic_exponent = p;
  b.cutoff = cutoff;
  return b;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

TEST_CASE("bose occupation anchors") {
  // omega/T -> inf freezes the bath
  CHECK(bose_occupation(1.0, 1e-4) == doctest::Approx(0.0).epsilon(1e-30));
  // omega = T ln 2 gives exactly one quantum on average
  CHECK(bose_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bose_occupation(2.0 * std::log(2.0), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // direct evaluation at omega = T = 1
  CHECK(bose_occupation(1.0, 1.0) ==
        doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(bose_occupation(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(bose_occupation(-1.0, 1.0), DomainError);
}

TEST_CASE("ohmic density anchors") {
  // linear vanishing at zero for p = 1
  CHECK(ohmic_density(1e-12, 0.005, 1.0, 1000.0) < 1e-13);
  CHECK(ohmic_density(1.0, 0.005, 1.0, 1000.0) ==
        doctest::Approx(0.005 * std::exp(-0.001)).epsilon(1e-14));
  // power-law scaling well below the cutoff
  const double j1 = ohmic_density(0.5, 0.01, 2.0, 1e6);
  const double j2 = ohmic_density(1.0, 0.01, 2.0, 1e6);
  CHECK(j2 / j1 == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("spectral response branches and composition") {
  const BathSpec b = ohmic_bath(1.0);
  const double expected =
      kTwoPi * 0.005 * std::exp(-0.001) * (1.0 + 1.0 / (std::exp(1.0) - 1.0));
  CHECK(spectral_response(1.0, b) == doctest::Approx(expected).epsilon(1e-14));
  // frozen bath absorbs nothing
  CHECK(spectral_response(-1.0, ohmic_bath(1e-3)) < 1e-300);
}

TEST_CASE("detailed balance at omega=0.5, T=2 and at random points") {
  const BathSpec b2 = ohmic_bath(2.0);
  CHECK(spectral_response(-0.5, b2) / spectral_response(0.5, b2) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-12));

  std::mt19937_64 rng(41);
  for (int i = 0; i < 200; ++i) {
    const double w = 0.01 + 3.0 * double(rng() >> 11) * 0x1.0p-53;
    const double t = 0.05 + 5.0 * double(rng() >> 11) * 0x1.0p-53;
    const double p = (i % 3) + 1.0;
    const BathSpec b = ohmic_bath(t, 0.003, p, 500.0);
    const double ratio = spectral_response(-w, b) / spectral_response(w, b);
    CHECK(ratio == doctest::Approx(std::exp(-w / t)).epsilon(1e-12));
    CHECK(spectral_response(w, b) >= 0.0);
    CHECK(spectral_response(-w, b) >= 0.0);
  }
}

TEST_CASE("omega = 0 continuous limit") {
  CHECK(spectral_response(0.0, ohmic_bath(0.7)) ==
        doctest::Approx(kTwoPi * 0.005 * 0.7).epsilon(1e-14));
  CHECK(spectral_response(0.0, ohmic_bath(0.7, 0.005, 2.0)) == 0.0);
}

TEST_CASE("filtered response hits kappa_f/pi at line center") {
  BathSpec b = ohmic_bath(1.0);
  b.filter = FilterSpec{0.9, 0.02, LambShiftMode::Zero};
  CHECK(filtered_response(0.9, b) == doctest::Approx(0.02 / M_PI).epsilon(1e-12));
}

TEST_CASE("filtered response is suppressed far from the line") {
  BathSpec b = ohmic_bath(1.0);
  b.filter = FilterSpec{0.9, 0.02, LambShiftMode::Zero};
  const double center = filtered_response(0.9, b);
  CHECK(filtered_response(20.0, b) < 1e-4 * center);
}

TEST_CASE("filtered response FWHM is 2 pi G at the center") {
  BathSpec b = ohmic_bath(1.0, 0.002);
  b.filter = FilterSpec{1.0, 0.05, LambShiftMode::Zero};
  const double g_at_center = spectral_response(1.0, b);
  const double half = 0.5 * filtered_response(1.0, b);
  // G varies slowly across the (narrow) line, so the half-height points sit
  // a half-width away from the center.
  const double w_hi = 1.0 + M_PI * g_at_center;
  CHECK(filtered_response(w_hi, b) == doctest::Approx(half).epsilon(2e-2));
}

TEST_CASE("filtered negative branch keeps detailed balance") {
  BathSpec b = ohmic_bath(0.8);
  b.filter = FilterSpec{0.9, 0.02, LambShiftMode::Zero};
  for (const double w : {0.3, 0.9, 1.4}) {
    CHECK(filtered_response(-w, b) / filtered_response(w, b) ==
          doctest::Approx(std::exp(-w / 0.8)).epsilon(1e-12));
  }
}

TEST_CASE("principal-value shift agrees with a brute-force excision sum") {
  const BathSpec b = ohmic_bath(1.0, 0.005, 1.0, 50.0);
  const double w0 = 1.0;
  const double pv = lamb_shift_pv(w0, b);

  // Independent oracle: midpoint rule with a symmetric hole around the pole.
  const double eps = 1e-5;
  double acc = 0.0;
  const double hi = 3000.0;
  const int n = 3000000;
  const double h = hi / n;
  for (int i = 0; i < n; ++i) {
    const double w = (i + 0.5) * h;
    if (std::abs(w - w0) < eps) continue;
    acc += spectral_response(w, b) / (w0 - w) * h;
  }
  CHECK(pv == doctest::Approx(acc).epsilon(1e-4));
  CHECK(std::isfinite(pv));
}

TEST_CASE("numeric-PV mode shifts the filtered line") {
  BathSpec b = ohmic_bath(1.0, 0.005, 1.0, 50.0);
  b.filter = FilterSpec{1.0, 0.02, LambShiftMode::NumericPV};
  const double v = filtered_response(1.0, b);
  BathSpec b0 = b;
  b0.filter->lamb_shift = LambShiftMode::Zero;
  CHECK(v != doctest::Approx(filtered_response(1.0, b0)).epsilon(1e-6));
  CHECK(std::isfinite(v));
}

TEST_CASE("gated response applies hard windows") {
  BathSpec b = ohmic_bath(1.0);
  b.coupling_windows = {{0.85, 1.15}};
  CHECK(gated_response(0.9, b) == doctest::Approx(spectral_response(0.9, b)));
  CHECK(gated_response(0.2, b) == 0.0);
  CHECK(gated_response(-0.9, b) == doctest::Approx(spectral_response(-0.9, b)));
  CHECK(gated_response(-0.2, b) == 0.0);
}

TEST_CASE("bath_response dispatch: windows win, then filter, then plain") {
  BathSpec plain = ohmic_bath(1.0);
  CHECK(bath_response(0.7, plain) == doctest::Approx(spectral_response(0.7, plain)));

  BathSpec filt = plain;
  filt.filter = FilterSpec{0.7, 0.02, LambShiftMode::Zero};
  CHECK(bath_response(0.7, filt) == doctest::Approx(0.02 / M_PI));

  BathSpec gated = filt;
  gated.coupling_windows = {{0.6, 0.8}};
  CHECK(bath_response(0.7, gated) == doctest::Approx(spectral_response(0.7, gated)));
  CHECK(bath_response(0.3, gated) == 0.0);
}
