#include "qar/oracle_tls.hpp"

#include <cmath>

#include "qar/medium.hpp"
#include "qar/spectra.hpp"

namespace qar {

namespace {

RateParams frame(double omega_h, double omega_c, double g) {
  RateParams p;
  const DressedFrequencies f = dressed_frequencies(Medium::TLS, omega_h, omega_c, g);
  p.omega_h = omega_h;
  p.omega_c_tilde = f.omega_c_tilde;
  p.omega_w = omega_h - f.omega_c_tilde;
  p.c2 = f.c2;
  p.s2 = f.s2;
  return p;
}

}  // namespace

RateParams paper_rates(double omega_h, double omega_c, double g, double kappa_w,
                       double kappa_h, double kappa_c, double t_w, double t_h, double t_c) {
  RateParams p = frame(omega_h, omega_c, g);
  p.t_h = t_h;
  p.t_c = t_c;
  p.gamma_w = p.omega_w * kappa_w * bose_occupation(p.omega_w, t_w);
  p.gamma_h = p.omega_h * kappa_h * bose_occupation(p.omega_h, t_h);
  p.gamma_c = p.omega_c_tilde * kappa_c * bose_occupation(p.omega_c_tilde, t_c);
  return p;
}

RateParams matched_rates(const ValidatedConfig& cfg) {
  const SystemConfig& c = cfg.get();
  RateParams p = frame(c.omega_h, c.omega_c, c.g);
  p.t_h = c.hot.temperature;
  p.t_c = c.cold.temperature;
  const auto down = [](double w, const BathSpec& b) {
    return damping_rate(w, b) * (1.0 + bose_occupation(w, b.temperature));
  };
  p.gamma_w = down(p.omega_w, c.work);
  p.gamma_h = down(p.omega_h, c.hot);
  p.gamma_c = down(p.omega_c_tilde, c.cold);
  return p;
}

OccupationPair rate_ode_derivatives(const RateParams& p, const OccupationPair& x) {
  const double xh = std::exp(-p.omega_h / p.t_h);
  const double yc = std::exp(-p.omega_c_tilde / p.t_c);
  const double w = p.s2 * p.gamma_w;
  OccupationPair d;
  d.n_h = -p.c2 * p.gamma_h * (1.0 + xh) * x.n_h + p.c2 * p.gamma_h * xh + w * (x.n_c - x.n_h);
  d.n_c = -p.c2 * p.gamma_c * (1.0 + yc) * x.n_c + p.c2 * p.gamma_c * yc + w * (x.n_h - x.n_c);
  return d;
}

OccupationPair rate_fixed_point(const RateParams& p) {
  const double xh = std::exp(-p.omega_h / p.t_h);
  const double yc = std::exp(-p.omega_c_tilde / p.t_c);
  const double ah = p.c2 * p.gamma_h;
  const double ac = p.c2 * p.gamma_c;
  const double w = p.s2 * p.gamma_w;
  // [ah(1+xh)+w] n_h - w n_c = ah xh ;  -w n_h + [ac(1+yc)+w] n_c = ac yc
  const double m11 = ah * (1.0 + xh) + w, m22 = ac * (1.0 + yc) + w;
  const double det = m11 * m22 - w * w;
  OccupationPair x;
  x.n_h = (ah * xh * m22 + w * ac * yc) / det;
  x.n_c = (ac * yc * m11 + w * ah * xh) / det;
  return x;
}

double cycle_flux(const RateParams& p) {
  const double xh = std::exp(p.omega_h / p.t_h);
  const double yc = std::exp(p.omega_c_tilde / p.t_c);
  const double num = p.c2 * p.s2 * p.gamma_w * p.gamma_h * p.gamma_c * (xh - yc);
  const double den =
      p.c2 * p.gamma_h * p.gamma_c * (1.0 + xh) * (1.0 + yc) +
      p.s2 * p.gamma_w *
          (p.gamma_h * yc * (1.0 + xh) + p.gamma_c * xh * (1.0 + yc));
  return num / den;
}

HeatCurrents analytic_currents(const RateParams& p) {
  const double k = cycle_flux(p);
  HeatCurrents j;
  j.work = p.omega_w * k;
  j.hot = -p.omega_h * k;
  j.cold = p.omega_c_tilde * k;
  return j;
}

}  // namespace qar
