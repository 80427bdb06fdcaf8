#include "qar/studies.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace qar {

void for_each_index_serial(int n, const std::function<void(int)>& fn) {
  for (int i = 0; i < n; ++i) fn(i);
}

void for_each_index_parallel(int n, int threads, const std::function<void(int)>& fn) {
  if (threads == 1) {
    for_each_index_serial(n, fn);
    return;
  }
  if (threads > 1) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) fn(i);
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::OmegaC: return "omega_c";
    case SweepParam::Coupling: return "g";
    case SweepParam::OhmicExponent: return "p";
    case SweepParam::TempWork: return "T_w";
    case SweepParam::TempHot: return "T_h";
    default: return "T_c";
  }
}

std::vector<double> Grid::values() const {
  if (!explicit_points.empty()) return explicit_points;
  std::vector<double> v(static_cast<size_t>(count), 0.0);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (int i = 0; i < count; ++i) {
    const double t = double(i) / double(count - 1);
    v[size_t(i)] = log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  return v;
}

bool laws_hold(const SteadyStateReport& rep) {
  const double jmax =
      std::max({std::abs(rep.j_w), std::abs(rep.j_h), std::abs(rep.j_c), 1e-300});
  return std::abs(rep.first_law_residual) <= 1e-10 * jmax && rep.sigma >= -1e-10;
}

SteadyStateReport solve_config(const SystemConfig& cfg, const SolveOptions& opt) {
  const ValidatedConfig vc = validate_or_throw(cfg);
  const DressedSystem d = build_dressed(vc);
  const LiouvillianSet l = assemble(vc, d);
  return solve_report(vc, l, opt);
}

namespace {

void set_param(SystemConfig& c, SweepParam p, double v) {
  switch (p) {
    case SweepParam::OmegaC: c.omega_c = v; break;
    case SweepParam::Coupling: c.g = v; break;
    case SweepParam::OhmicExponent:
      c.work.ohmic_exponent = c.hot.ohmic_exponent = c.cold.ohmic_exponent = v;
      break;
    case SweepParam::TempWork: c.work.temperature = v; break;
    case SweepParam::TempHot: c.hot.temperature = v; break;
    case SweepParam::TempCold: c.cold.temperature = v; break;
  }
}

}  // namespace

StudyResult run_sweep(const SweepSpec& spec, int threads) {
  const std::vector<double> values = spec.grid.values();
  StudyResult out;
  out.rows.resize(values.size());
  for_each_index_parallel(int(values.size()), threads, [&](int i) {
    StudyRow& row = out.rows[size_t(i)];
    row.index = i;
    row.value = values[size_t(i)];
    SystemConfig c = spec.base;
    set_param(c, spec.param, row.value);
    SolveOptions opt;
    opt.svd_audit = (i % 32) == 0;  // audit path on a slice of the grid
    try {
      row.report = solve_config(c, opt);
      row.ok = true;
      row.laws_ok = laws_hold(row.report);
      if (spec.correlations) {
        const ValidatedConfig vc = validate_or_throw(c);
        const DressedSystem d = build_dressed(vc);
        row.corr = correlation_report(row.report.rho, d, spec.party);
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  out.summary.rows = int(out.rows.size());
  for (const StudyRow& r : out.rows) {
    if (!r.ok) ++out.summary.failures;
    if (r.ok && !r.laws_ok) out.summary.laws_ok_all = false;
  }
  return out;
}

MaxPowerResult max_power_point(const SystemConfig& base, double lo, double hi) {
  const auto j_c_at = [&base](double x) -> double {
    SystemConfig c = base;
    if (c.topology == Topology::Standard)
      c.omega_c = x;
    else
      c.omega_h = x;  // swapped: cold bath sits on subsystem A
    try {
      return solve_config(c).j_c;
    } catch (const std::exception&) {
      return -1.0;
    }
  };

  // Golden-section maximization; >= comparisons break ties toward the
  // smaller frequency.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = j_c_at(c1), f2 = j_c_at(c2);
  const double tol = 1e-5 * base.omega_h;
  while (b - a > tol) {
    if (f1 >= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = j_c_at(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = j_c_at(c2);
    }
  }
  const double x = 0.5 * (a + b);

  MaxPowerResult out;
  SystemConfig c = base;
  if (c.topology == Topology::Standard)
    c.omega_c = x;
  else
    c.omega_h = x;
  out.report = solve_config(c);
  out.omega_star = x;
  out.j_c_star = out.report.j_c;
  out.eps_carnot = out.report.eps_carnot;
  if (!(out.report.flags.cooling && out.report.eps_defined))
    throw NoCoolingInInterval("max_power_point: no cooling found in the search interval");
  out.eps_star = out.report.eps;
  return out;
}

namespace {

// Portable uniforms on top of the standardized mt19937_64 stream; the
// distributions in <random> are implementation-defined, these are not.
double uniform01(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}
double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

}  // namespace

StudyResult random_campaign(const SamplingSpec& spec, int threads) {
  std::mt19937_64 rng(spec.seed);
  const SamplingRanges& r = spec.ranges;
  StudyResult out;
  out.rows.resize(size_t(spec.count));

  // Sampling is cheap and inherently sequential (rejection), so draw every
  // accepted parameter set first; rows then solve independently.
  for (int i = 0; i < spec.count; ++i) {
    StudyRow& row = out.rows[size_t(i)];
    row.index = i;
    for (;;) {
      row.t_c = log_uniform(rng, r.t_c_lo, r.t_c_hi);
      row.t_h = log_uniform(rng, row.t_c, r.t_h_hi);
      row.t_w = log_uniform(rng, row.t_h, r.t_w_hi);
      row.kappa_w = log_uniform(rng, r.kappa_lo, r.kappa_hi);
      row.kappa_h = log_uniform(rng, r.kappa_lo, r.kappa_hi);
      row.kappa_c = log_uniform(rng, r.kappa_lo, r.kappa_hi);
      row.g = log_uniform(rng, r.g_lo, r.g_hi);
      const double wt_max = cooling_window_max(row.t_w, row.t_h, row.t_c, 1.0);
      if (2.0 * row.g < 0.999 * wt_max) break;  // window must be open
    }
  }

  for_each_index_parallel(spec.count, threads, [&](int i) {
    StudyRow& row = out.rows[size_t(i)];
    SystemConfig c = spec.base;
    c.omega_h = 1.0;
    c.g = row.g;
    c.work.temperature = row.t_w;
    c.hot.temperature = row.t_h;
    c.cold.temperature = row.t_c;
    c.work.kappa = row.kappa_w;
    c.hot.kappa = row.kappa_h;
    c.cold.kappa = row.kappa_c;
    const double wt_max = cooling_window_max(row.t_w, row.t_h, row.t_c, 1.0);
    const double hi = std::sqrt(std::max(wt_max * wt_max - 4.0 * row.g * row.g, 0.0));
    try {
      const MaxPowerResult m = max_power_point(c, 1e-9, hi * (1.0 - 1e-9));
      row.omega_star = m.omega_star;
      row.j_c_star = m.j_c_star;
      row.eps_star = m.eps_star;
      row.eps_ratio = m.eps_star / m.eps_carnot;
      row.report = m.report;
      row.ok = true;
      row.laws_ok = laws_hold(m.report);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  StudySummary& s = out.summary;
  s.rows = spec.count;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const StudyRow& row : out.rows) {
    if (!row.ok) {
      ++s.failures;
      continue;
    }
    if (!row.laws_ok) s.laws_ok_all = false;
    s.max_eps_ratio = std::max(s.max_eps_ratio, row.eps_ratio);
    if (row.eps_ratio > 0.5) ++s.above_half;
    if (row.eps_ratio > 1.0) ++s.above_one;
    if (row.eps_ratio > spec.tail_threshold) {
      const double lx = std::log(row.g), ly = std::log(row.omega_star);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++s.fit_points;
    }
  }
  if (s.fit_points >= 2) {
    const double n = double(s.fit_points);
    s.fit_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  out.hist.edges.resize(22);
  out.hist.counts.assign(21, 0);
  for (int i = 0; i <= 21; ++i) out.hist.edges[size_t(i)] = 0.05 * double(i);
  for (const StudyRow& row : out.rows) {
    if (!row.ok) continue;
    int bin = int(std::floor(row.eps_ratio / 0.05));
    bin = std::clamp(bin, 0, 20);
    ++out.hist.counts[size_t(bin)];
  }
  return out;
}

LeakCurves leak_curves(const SystemConfig& base, const std::vector<double>& g_values,
                       int points_per_curve, int threads) {
  LeakCurves out;
  out.g_values = g_values;
  const double wt_max = cooling_window_max(base.work.temperature, base.hot.temperature,
                                           base.cold.temperature, base.omega_h);
  const int total = int(g_values.size()) * points_per_curve;
  out.points.resize(size_t(total));
  for_each_index_parallel(total, threads, [&](int idx) {
    const int gi = idx / points_per_curve;
    const int pi = idx % points_per_curve;
    const double g = g_values[size_t(gi)];
    LeakCurvePoint& pt = out.points[size_t(idx)];
    pt.g = g;
    const double arg = wt_max * wt_max - 4.0 * g * g;
    if (arg <= 0.0) return;  // window closed entirely at this coupling
    const double hi = std::sqrt(arg) * (1.0 - 1e-9);
    pt.omega_c = hi * double(pi + 1) / double(points_per_curve);
    SystemConfig c = base;
    c.g = g;
    c.omega_c = pt.omega_c;
    try {
      const SteadyStateReport rep = solve_config(c);
      pt.j_c = rep.j_c;
      pt.cooling = rep.flags.cooling;
      if (rep.eps_defined) pt.eps_ratio = rep.eps / rep.eps_carnot;
    } catch (const std::exception&) {
    }
  });

  for (size_t gi = 0; gi < g_values.size(); ++gi) {
    double j0 = 0.0, emax = 0.0;
    for (int pi = 0; pi < points_per_curve; ++pi) {
      const LeakCurvePoint& pt = out.points[gi * size_t(points_per_curve) + size_t(pi)];
      if (pt.cooling) {
        j0 = std::max(j0, pt.j_c);
        emax = std::max(emax, pt.eps_ratio);
      }
    }
    for (int pi = 0; pi < points_per_curve; ++pi) {
      LeakCurvePoint& pt = out.points[gi * size_t(points_per_curve) + size_t(pi)];
      pt.j_c_norm = j0 > 0.0 ? pt.j_c / j0 : 0.0;
    }
    out.gaps.push_back(1.0 - emax);
    if (emax >= 1.0) out.closed_all = false;
  }
  return out;
}

std::vector<SwappedBoundRow> swapped_bound_check(const SystemConfig& base,
                                                 const std::vector<double>& g_values) {
  std::vector<SwappedBoundRow> out;
  for (const double g : g_values) {
    SystemConfig c = base;
    c.topology = Topology::Swapped;
    c.g = g;
    const double wt_b = dressed_frequencies(c.medium, c.omega_h, c.omega_c, g).omega_c_tilde;
    const double ec = carnot_cop(c.work.temperature, c.hot.temperature, c.cold.temperature);
    SwappedBoundRow row;
    row.g = g;
    // COP is omega_A / omega_B_tilde, so cooling requires omega_A below
    // eps_c * omega_B_tilde; search slightly past the edge to bracket.
    const MaxPowerResult m = max_power_point(c, 1e-9, 1.05 * ec * wt_b);
    row.omega_star = m.omega_star;
    row.j_c_star = m.j_c_star;
    row.eps_star = m.eps_star;
    row.eps_ratio = m.eps_star / m.eps_carnot;
    row.within_bound = m.eps_star <= 0.5 * ec * (1.0 + 1e-3);
    out.push_back(row);
  }
  return out;
}

}  // namespace qar
