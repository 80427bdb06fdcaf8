#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "qar/medium.hpp"

using namespace qar;

namespace {

ValidatedConfig make(Medium m, double wc, double g, int na = 2, int nb = 2) {
  SystemConfig c;
  c.medium = m;
  c.omega_h = 1.0;
  c.omega_c = wc;
  c.g = g;
  c.truncation_A = na;
  c.truncation_B = nb;
  c.work.temperature = 3.0;
  c.hot.temperature = 2.0;
  c.cold.temperature = 1.0;
  c.work.kappa = c.hot.kappa = c.cold.kappa = 0.005;
  return validate_or_throw(c);
}

}  // namespace

TEST_CASE("dressed frequencies: TLS uncoupled limit") {
  const DressedFrequencies f = dressed_frequencies(Medium::TLS, 1.0, 0.1, 0.0);
  CHECK(f.omega_c_tilde == doctest::Approx(0.1));
  CHECK(f.mixing_angle == doctest::Approx(0.0));
  CHECK(f.c2 == doctest::Approx(1.0));
  CHECK(f.s2 == doctest::Approx(0.0));
}

TEST_CASE("dressed frequencies: TLS at omega_c=0.1, g=0.005") {
  const DressedFrequencies f = dressed_frequencies(Medium::TLS, 1.0, 0.1, 0.005);
  CHECK(f.omega_c_tilde == doctest::Approx(std::sqrt(0.01 + 0.0001)).epsilon(1e-14));
  CHECK(std::sin(f.mixing_angle) == doctest::Approx(0.01 / f.omega_c_tilde).epsilon(1e-14));
  CHECK(f.c2 + f.s2 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("dressed frequencies: OMS keeps the bare B frequency") {
  const DressedFrequencies f = dressed_frequencies(Medium::OMS, 1.0, 0.25, 0.05);
  CHECK(f.omega_c_tilde == doctest::Approx(0.25));
  CHECK(f.c2 == doctest::Approx(1.0));
  CHECK(f.s2 == doctest::Approx((0.05 / 0.25) * (0.05 / 0.25)));
}

TEST_CASE("TLS eigenvalues and transition table match the level diagram") {
  const DressedSystem d = build_tls(make(Medium::TLS, 0.1, 0.02));
  const double wt = d.omega_c_tilde;
  // (+-omega_h +- omega_c_tilde)/2 across the four states
  CHECK(d.energies[d.index(1, 1)] == doctest::Approx(0.5 * (1.0 + wt)));
  CHECK(d.energies[d.index(1, 0)] == doctest::Approx(0.5 * (1.0 - wt)));
  CHECK(d.energies[d.index(0, 1)] == doctest::Approx(0.5 * (-1.0 + wt)));
  CHECK(d.energies[d.index(0, 0)] == doctest::Approx(0.5 * (-1.0 - wt)));

  // Arrow multiplicities: omega_c_tilde twice, omega_h twice, omega_w once,
  // omega_plus once.
  std::map<JumpLabel, int> count;
  for (const TransitionGroup& g : d.groups) count[g.label] += int(g.elems.size());
  CHECK(count[JumpLabel::B] == 2);
  CHECK(count[JumpLabel::A] == 2);
  CHECK(count[JumpLabel::AMinus] == 1);
  CHECK(count[JumpLabel::APlus] == 1);
  for (const TransitionGroup& g : d.groups) {
    if (g.label == JumpLabel::A) CHECK(g.frequency == doctest::Approx(1.0));
    if (g.label == JumpLabel::B) CHECK(g.frequency == doctest::Approx(wt));
    if (g.label == JumpLabel::AMinus) CHECK(g.frequency == doctest::Approx(1.0 - wt));
    if (g.label == JumpLabel::APlus) CHECK(g.frequency == doctest::Approx(1.0 + wt));
  }
}

TEST_CASE("TLS eigenvector matrix is orthogonal; theta=0 reduces to products") {
  const DressedSystem d = build_tls(make(Medium::TLS, 0.1, 0.02));
  const Eigen::MatrixXd v = d.bare_eigenvectors;
  CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

  const DressedSystem d0 = build_tls(make(Medium::TLS, 0.1, 0.0));
  CHECK((d0.bare_eigenvectors - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("every jump operator is an eigenoperator of H_dressed") {
  for (Medium m : {Medium::TLS, Medium::TLOS, Medium::OMS}) {
    const ValidatedConfig cfg =
        make(m, 0.2, 0.03, m == Medium::OMS ? 5 : 2, m == Medium::TLS ? 2 : 7);
    const DressedSystem d = build_dressed(cfg);
    for (const TransitionGroup& g : d.groups)
      for (const TransitionElement& e : g.elems)
        CHECK(std::abs(d.energies[e.from] - d.energies[e.to] - g.frequency) < 1e-12);
  }
}

TEST_CASE("[H, O] = -omega O exactly for TLS and TLOS full label operators") {
  for (Medium m : {Medium::TLS, Medium::TLOS}) {
    const ValidatedConfig cfg = make(m, 0.17, 0.04, 2, m == Medium::TLS ? 2 : 9);
    const DressedSystem d = build_dressed(cfg);
    const Eigen::MatrixXcd h = d.energies.cast<std::complex<double>>().asDiagonal();
    for (JumpLabel l : {JumpLabel::A, JumpLabel::B, JumpLabel::AMinus, JumpLabel::APlus}) {
      double freq = 0.0;
      for (const TransitionGroup& g : d.groups)
        if (g.label == l) freq = g.frequency;
      const Eigen::MatrixXcd op = d.jump_operator(l);
      const Eigen::MatrixXcd comm = h * op - op * h;
      CHECK((comm + freq * op).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("OMS anharmonic remainder is bounded by 2 g^2/omega_c per excitation") {
  const ValidatedConfig cfg = make(Medium::OMS, 0.2, 0.03, 6, 6);
  const DressedSystem d = build_dressed(cfg);
  const Eigen::MatrixXcd h = d.energies.cast<std::complex<double>>().asDiagonal();
  const Eigen::MatrixXcd op = d.jump_operator(JumpLabel::A);
  const Eigen::MatrixXcd rem = h * op - op * h + d.omega_h * op;
  // remainder rows carry at most chi * (2n - 1) with n < dim_a
  const double chi = 0.03 * 0.03 / 0.2;
  const double bound = 2.0 * chi * double(d.dim_a) * op.cwiseAbs().maxCoeff();
  CHECK(rem.cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("TLOS spectrum separates at g=0 and carries the polaron offset") {
  const ValidatedConfig cfg0 = make(Medium::TLOS, 0.25, 0.0, 2, 6);
  const DressedSystem d0 = build_dressed(cfg0);
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < 6; ++m)
      CHECK(d0.energies[d0.index(n, m)] ==
            doctest::Approx((n - 0.5) * 1.0 + m * 0.25).epsilon(1e-14));

  // The -g^2/omega_c offset shifts every level but no Bohr frequency.
  const ValidatedConfig cfg = make(Medium::TLOS, 0.25, 0.05, 2, 6);
  const DressedSystem d = build_dressed(cfg);
  const double shift = 0.05 * 0.05 / 0.25;
  for (int i = 0; i < d.dim; ++i)
    CHECK(d.energies[i] == doctest::Approx(d0.energies[i] - shift).epsilon(1e-12));
  for (size_t k = 0; k < d.groups.size(); ++k)
    CHECK(d.groups[k].frequency == doctest::Approx(d0.groups[k].frequency).epsilon(1e-12));
}

TEST_CASE("TLOS ideal-mode Bohr set is the four cycle frequencies") {
  const DressedSystem d = build_dressed(make(Medium::TLOS, 0.25, 0.05, 2, 6));
  for (const TransitionGroup& g : d.groups) {
    switch (g.label) {
      case JumpLabel::A: CHECK(g.frequency == doctest::Approx(1.0)); break;
      case JumpLabel::B: CHECK(g.frequency == doctest::Approx(0.25)); break;
      case JumpLabel::AMinus: CHECK(g.frequency == doctest::Approx(0.75)); break;
      case JumpLabel::APlus: CHECK(g.frequency == doctest::Approx(1.25)); break;
    }
  }
}

TEST_CASE("OMS energies: separable at g=0, Kerr shift at g>0") {
  const DressedSystem d0 = build_dressed(make(Medium::OMS, 0.2, 0.0, 5, 5));
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m)
      CHECK(d0.energies[d0.index(n, m)] == doctest::Approx(n * 1.0 + m * 0.2).epsilon(1e-14));

  const DressedSystem d = build_dressed(make(Medium::OMS, 0.2, 0.03, 5, 5));
  const double chi = 0.03 * 0.03 / 0.2;
  // E(2,0) - 2 E(1,0) = -2 chi from the quadratic term
  CHECK(d.energies[d.index(2, 0)] - 2.0 * d.energies[d.index(1, 0)] ==
        doctest::Approx(-2.0 * chi).epsilon(1e-10));
}

TEST_CASE("OMS A-transitions shift with the excitation number") {
  const DressedSystem d = build_dressed(make(Medium::OMS, 0.2, 0.03, 5, 5));
  const double chi = 0.03 * 0.03 / 0.2;
  int families = 0;
  for (const TransitionGroup& g : d.groups)
    if (g.label == JumpLabel::AMinus) {
      ++families;
      bool matched = false;
      for (int n = 1; n < 5; ++n)
        if (g.frequency == doctest::Approx(1.0 - 0.2 - (2 * n - 1) * chi).epsilon(1e-12))
          matched = true;
      CHECK(matched);
    }
  CHECK(families == 4);  // one per initial A occupation
}
