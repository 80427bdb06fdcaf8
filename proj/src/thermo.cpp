#include "qar/thermo.hpp"

#include <cmath>

namespace qar {

Eigen::VectorXd steady_populations(const Eigen::MatrixXd& w) {
  const int d = int(w.rows());
  Eigen::MatrixXd a = w;
  a.row(d - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  b[d - 1] = 1.0;
  return a.colPivHouseholderQr().solve(b);
}

Eigen::VectorXd steady_populations_svd(const Eigen::MatrixXd& w) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int d = int(w.rows());
  const double tol = 1e-12 * sv[0] * d;
  int null_dim = 0;
  for (int i = 0; i < d; ++i)
    if (sv[i] <= tol) ++null_dim;
  if (null_dim > 1)
    throw DegenerateSteadyState("rate matrix nullspace dimension > 1");
  Eigen::VectorXd p = svd.matrixV().col(d - 1);
  const double s = p.sum();
  if (std::abs(s) < 1e-300) throw DegenerateSteadyState("nullspace vector has zero trace");
  return p / s;
}

namespace {

Eigen::MatrixXcd steady_state_full(const LiouvillianSet& liou, const SolveOptions& opt) {
  const int d = liou.dressed().dim;
  if (d * d > opt.full_path_dim_cap)
    throw DegenerateSteadyState(
        "degenerate configuration requires the full superoperator path, but d^2 exceeds "
        "the configured cap");
  Eigen::MatrixXcd sup = liou.superoperator_total(false);
  const int n = d * d;
  // Trace constraint replaces the last row.
  for (int col = 0; col < n; ++col) sup(n - 1, col) = 0.0;
  for (int i = 0; i < d; ++i) sup(n - 1, i * d + i) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
  b[n - 1] = 1.0;
  Eigen::VectorXcd v = sup.colPivHouseholderQr().solve(b);
  Eigen::MatrixXcd rho(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) rho(r, c) = v[c * d + r];
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

}  // namespace

Eigen::MatrixXcd steady_state(const LiouvillianSet& liou, const SolveOptions& opt) {
  if (!liou.population_sector_licensed()) return steady_state_full(liou, opt);
  const Eigen::MatrixXd w = liou.rate_matrix();
  Eigen::VectorXd p = steady_populations(w);
  if (opt.svd_audit) {
    Eigen::VectorXd q = steady_populations_svd(w);
    if ((p - q).cwiseAbs().maxCoeff() > opt.agreement_tol)
      throw DegenerateSteadyState("deflated solve and SVD nullspace disagree");
  }
  return p.cast<std::complex<double>>().asDiagonal();
}

HeatCurrents heat_currents(const LiouvillianSet& liou, const Eigen::MatrixXcd& rho) {
  const Eigen::VectorXd& e = liou.dressed().energies;
  HeatCurrents out;
  for (BathRole bath : {BathRole::Work, BathRole::Hot, BathRole::Cold}) {
    const Eigen::MatrixXcd lr = liou.apply(bath, rho);
    double j = 0.0;
    for (int i = 0; i < e.size(); ++i) j += (lr(i, i) * e[i]).real();
    switch (bath) {
      case BathRole::Work: out.work = j; break;
      case BathRole::Hot: out.hot = j; break;
      case BathRole::Cold: out.cold = j; break;
    }
  }
  return out;
}

double carnot_cop(double t_w, double t_h, double t_c) {
  if (!(t_w > t_h && t_h > t_c && t_c > 0.0))
    throw TemperatureOrderError("carnot_cop: requires T_w > T_h > T_c > 0");
  return (t_w - t_h) * t_c / ((t_h - t_c) * t_w);
}

double cooling_window_max(double t_w, double t_h, double t_c, double omega_h) {
  const double ec = carnot_cop(t_w, t_h, t_c);
  return ec / (1.0 + ec) * omega_h;
}

double cycle_entropy(double omega_h, double omega_c_tilde, double omega_w, double t_w,
                     double t_h, double t_c, Cycle cycle) {
  const double s = -omega_c_tilde / t_c - omega_w / t_w + omega_h / t_h;
  switch (cycle) {
    case Cycle::Cooling4324:
    case Cycle::Cooling3213:
      return s;
    default:
      return -s;
  }
}

SteadyStateReport solve_report(const ValidatedConfig& cfg, const LiouvillianSet& liou,
                               const SolveOptions& opt) {
  const SystemConfig& c = cfg.get();
  SteadyStateReport rep;
  rep.degeneracy_note = liou.degeneracy_note();
  rep.flags.population_path = liou.population_sector_licensed();
  try {
    rep.rho = steady_state(liou, opt);
  } catch (const DegenerateSteadyState&) {
    rep.flags.degenerate_nullspace = true;
    throw;
  }

  const int d = liou.dressed().dim;
  rep.trace_dev = std::abs(rep.rho.trace().real() - 1.0);
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep.rho, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  {
    const Eigen::MatrixXcd res = liou.apply_total(rep.rho);
    double rate_scale = 0.0;
    for (const Term& t : liou.terms()) rate_scale = std::max(rate_scale, t.rate);
    rep.solve_residual = res.cwiseAbs().maxCoeff() / std::max(rate_scale, 1e-300);
  }

  const HeatCurrents j = heat_currents(liou, rep.rho);
  rep.j_w = j.work;
  rep.j_h = j.hot;
  rep.j_c = j.cold;
  rep.first_law_residual = j.work + j.hot + j.cold;
  const double tw = c.work.temperature, th = c.hot.temperature, tc = c.cold.temperature;
  rep.sigma = -(j.work / tw + j.hot / th + j.cold / tc);
  rep.eps_carnot = carnot_cop(tw, th, tc);
  rep.flags.cooling = j.cold > 0.0 && j.work > 0.0 && j.hot < 0.0;
  if (rep.flags.cooling) {
    rep.eps = j.cold / j.work;
    rep.eps_defined = true;
  }

  // Truncation warning: population stuck in the top two Fock levels.
  const DressedSystem& ds = liou.dressed();
  if (c.medium != Medium::TLS) {
    double top = 0.0;
    for (int n = 0; n < ds.dim_a; ++n)
      for (int m = std::max(0, ds.dim_b - 2); m < ds.dim_b; ++m)
        top += rep.rho(ds.index(n, m), ds.index(n, m)).real();
    if (c.medium == Medium::OMS)
      for (int n = std::max(0, ds.dim_a - 2); n < ds.dim_a; ++n)
        for (int m = 0; m < ds.dim_b; ++m)
          top += rep.rho(ds.index(n, m), ds.index(n, m)).real();
    rep.flags.truncation_warning = top > opt.truncation_pop_tol;
  }

  // Weak-coupling validity of the dressed master equation for TLOS/OMS.
  if (c.medium == Medium::TLS) {
    rep.weak_coupling_ratio = 0.0;
    rep.flags.weak_coupling_valid = true;
  } else {
    const Eigen::VectorXd occ = ds.b_occupation_diagonal();
    double nb = 0.0;
    for (int i = 0; i < d; ++i) nb += occ[i] * rep.rho(i, i).real();
    rep.weak_coupling_ratio = c.g * c.g * nb / (c.omega_c * c.omega_c);
    rep.flags.weak_coupling_valid = rep.weak_coupling_ratio <= opt.weak_coupling_ratio;
  }
  return rep;
}

}  // namespace qar
