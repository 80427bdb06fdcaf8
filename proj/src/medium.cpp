#include "qar/medium.hpp"

#include <cmath>
#include <map>

namespace qar {

std::string to_string(JumpLabel l) {
  switch (l) {
    case JumpLabel::A: return "a";
    case JumpLabel::B: return "b";
    case JumpLabel::AMinus: return "ab+";  // a b† : lowers A, raises B
    default: return "ab";                  // a b  : lowers both
  }
}

DressedFrequencies dressed_frequencies(Medium medium, double /*omega_h*/, double omega_c,
                                       double g) {
  DressedFrequencies f;
  if (medium == Medium::TLS) {
    f.omega_c_tilde = std::sqrt(omega_c * omega_c + 4.0 * g * g);
    f.mixing_angle = std::atan2(2.0 * g, omega_c);
    const double s = 2.0 * g / f.omega_c_tilde;
    const double c = omega_c / f.omega_c_tilde;
    f.s2 = s * s;
    f.c2 = c * c;
  } else {
    f.omega_c_tilde = omega_c;
    f.mixing_angle = 2.0 * g / omega_c;
    f.c2 = 1.0;
    f.s2 = (g / omega_c) * (g / omega_c);
  }
  return f;
}

namespace {

DressedSystem make_base(const ValidatedConfig& cfg) {
  const SystemConfig& c = cfg.get();
  DressedSystem d;
  d.medium = c.medium;
  d.dim_a = c.truncation_A;
  d.dim_b = c.truncation_B;
  d.dim = d.dim_a * d.dim_b;
  d.omega_h = c.omega_h;
  d.omega_c = c.omega_c;
  d.g = c.g;
  const DressedFrequencies f = dressed_frequencies(c.medium, c.omega_h, c.omega_c, c.g);
  d.omega_c_tilde = f.omega_c_tilde;
  d.omega_w = c.omega_h - f.omega_c_tilde;
  d.omega_plus = c.omega_h + f.omega_c_tilde;
  d.c2 = f.c2;
  d.s2 = f.s2;
  d.energies = Eigen::VectorXd::Zero(d.dim);
  return d;
}

// Groups keyed by (label, analytic frequency); frequencies computed from
// the same closed form for every element, so equal frequencies compare
// exactly equal and no tolerance is needed here.
struct GroupBuilder {
  std::map<std::pair<JumpLabel, double>, std::vector<TransitionElement>> m;
  void add(JumpLabel l, double f, int from, int to, double amp) {
    m[{l, f}].push_back({from, to, amp});
  }
  std::vector<TransitionGroup> take() {
    std::vector<TransitionGroup> out;
    out.reserve(m.size());
    for (auto& [key, elems] : m) out.push_back({key.first, key.second, std::move(elems)});
    return out;
  }
};

}  // namespace

DressedSystem build_tls(const ValidatedConfig& cfg) {
  DressedSystem d = make_base(cfg);
  // Occupation index (n_a, m_b) -> 2*n_a + m_b. Paper states |1..4| are
  // (1,1), (1,0), (0,1), (0,0) in this convention.
  const double wh = d.omega_h, wt = d.omega_c_tilde;
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < 2; ++m)
      d.energies[d.index(n, m)] = (n - 0.5) * wh + (m - 0.5) * wt;

  GroupBuilder gb;
  for (int m = 0; m < 2; ++m) gb.add(JumpLabel::A, wh, d.index(1, m), d.index(0, m), 1.0);
  for (int n = 0; n < 2; ++n) gb.add(JumpLabel::B, wt, d.index(n, 1), d.index(n, 0), 1.0);
  gb.add(JumpLabel::AMinus, d.omega_w, d.index(1, 0), d.index(0, 1), 1.0);
  gb.add(JumpLabel::APlus, d.omega_plus, d.index(1, 1), d.index(0, 0), 1.0);
  d.groups = gb.take();

  // Dressed eigenstates in the bare product basis {gg, ge, eg, ee},
  // rotation by theta/2 inside each A sector.
  const double th = dressed_frequencies(Medium::TLS, wh, d.omega_c, d.g).mixing_angle;
  const double ch = std::cos(0.5 * th), sh = std::sin(0.5 * th);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
  // |n=1,m=1> = ch|ee> - sh|eg>, |1,0> = sh|ee> + ch|eg>
  v(3, d.index(1, 1)) = ch;
  v(2, d.index(1, 1)) = -sh;
  v(3, d.index(1, 0)) = sh;
  v(2, d.index(1, 0)) = ch;
  // |0,1> = ch|ge> + sh|gg>, |0,0> = ch|gg> - sh|ge>
  v(1, d.index(0, 1)) = ch;
  v(0, d.index(0, 1)) = sh;
  v(0, d.index(0, 0)) = ch;
  v(1, d.index(0, 0)) = -sh;
  d.bare_eigenvectors = v;
  return d;
}

DressedSystem build_tlos(const ValidatedConfig& cfg) {
  DressedSystem d = make_base(cfg);
  const double wh = d.omega_h, wc = d.omega_c, g = d.g;
  const double shift = g * g / wc;  // polaron offset, cancels in Bohr frequencies
  const int nb = d.dim_b;
  for (int n = 0; n < 2; ++n)
    for (int m = 0; m < nb; ++m)
      d.energies[d.index(n, m)] = (n - 0.5) * wh + m * wc - shift;

  GroupBuilder gb;
  for (int m = 0; m < nb; ++m)
    gb.add(JumpLabel::A, wh, d.index(1, m), d.index(0, m), 1.0);
  for (int n = 0; n < 2; ++n)
    for (int m = 1; m < nb; ++m)
      gb.add(JumpLabel::B, wc, d.index(n, m), d.index(n, m - 1), std::sqrt(double(m)));
  for (int m = 0; m + 1 < nb; ++m)
    gb.add(JumpLabel::AMinus, wh - wc, d.index(1, m), d.index(0, m + 1),
           std::sqrt(double(m + 1)));
  for (int m = 1; m < nb; ++m)
    gb.add(JumpLabel::APlus, wh + wc, d.index(1, m), d.index(0, m - 1), std::sqrt(double(m)));
  d.groups = gb.take();
  return d;
}

DressedSystem build_oms(const ValidatedConfig& cfg) {
  DressedSystem d = make_base(cfg);
  const double wh = d.omega_h, wc = d.omega_c, g = d.g;
  const double chi = g * g / wc;  // Kerr-like coefficient of (a†a)^2
  const int na = d.dim_a, nb = d.dim_b;
  for (int n = 0; n < na; ++n)
    for (int m = 0; m < nb; ++m)
      d.energies[d.index(n, m)] = n * wh + m * wc - chi * double(n) * double(n);

  GroupBuilder gb;
  for (int n = 1; n < na; ++n) {
    // Anharmonic family: frequency depends on the A excitation number.
    const double fa = wh - chi * double(2 * n - 1);
    const double sn = std::sqrt(double(n));
    for (int m = 0; m < nb; ++m)
      gb.add(JumpLabel::A, fa, d.index(n, m), d.index(n - 1, m), sn);
    for (int m = 0; m + 1 < nb; ++m)
      gb.add(JumpLabel::AMinus, fa - wc, d.index(n, m), d.index(n - 1, m + 1),
             sn * std::sqrt(double(m + 1)));
    for (int m = 1; m < nb; ++m)
      gb.add(JumpLabel::APlus, fa + wc, d.index(n, m), d.index(n - 1, m - 1),
             sn * std::sqrt(double(m)));
  }
  for (int n = 0; n < na; ++n)
    for (int m = 1; m < nb; ++m)
      gb.add(JumpLabel::B, wc, d.index(n, m), d.index(n, m - 1), std::sqrt(double(m)));
  d.groups = gb.take();
  return d;
}

DressedSystem build_dressed(const ValidatedConfig& cfg) {
  switch (cfg->medium) {
    case Medium::TLS: return build_tls(cfg);
    case Medium::TLOS: return build_tlos(cfg);
    default: return build_oms(cfg);
  }
}

Eigen::MatrixXcd DressedSystem::jump_operator(JumpLabel label) const {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (const TransitionGroup& g : groups)
    if (g.label == label)
      for (const TransitionElement& e : g.elems) op(e.to, e.from) += e.amp;
  return op;
}

Eigen::VectorXd DressedSystem::b_occupation_diagonal() const {
  Eigen::VectorXd v(dim);
  for (int n = 0; n < dim_a; ++n)
    for (int m = 0; m < dim_b; ++m) v[index(n, m)] = double(m);
  return v;
}

}  // namespace qar
