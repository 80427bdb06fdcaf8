#ifndef QAR_STUDIES_HPP
#define QAR_STUDIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qar/correlations.hpp"
#include "qar/thermo.hpp"

namespace qar {

class NoCoolingInInterval : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row loop used by every study. The serial loop is the reference
// implementation; the OpenMP loop must produce bit-identical rows since
// each row is computed independently by a single thread.
void for_each_index_serial(int n, const std::function<void(int)>& fn);
void for_each_index_parallel(int n, int threads, const std::function<void(int)>& fn);

enum class SweepParam { OmegaC, Coupling, OhmicExponent, TempWork, TempHot, TempCold };
std::string to_string(SweepParam);

struct Grid {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  bool log_spacing = false;
  std::vector<double> explicit_points;  // wins over (lo, hi, count) when nonempty
  std::vector<double> values() const;
};

struct SweepSpec {
  SystemConfig base;
  SweepParam param = SweepParam::OmegaC;
  Grid grid;
  bool correlations = false;
  MeasuredParty party = MeasuredParty::B;
};

struct StudyRow {
  int index = 0;
  double value = 0.0;  // swept value
  bool ok = false;
  bool laws_ok = false;
  std::string error;
  SteadyStateReport report;
  std::optional<CorrelationReport> corr;
  // campaign fields
  double t_w = 0.0, t_h = 0.0, t_c = 0.0;
  double kappa_w = 0.0, kappa_h = 0.0, kappa_c = 0.0;
  double g = 0.0;
  double omega_star = 0.0, j_c_star = 0.0, eps_star = 0.0, eps_ratio = 0.0;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<int> counts;
};

struct StudySummary {
  int rows = 0, failures = 0;
  bool laws_ok_all = true;
  // campaign summary
  int above_half = 0, above_one = 0;
  double max_eps_ratio = 0.0;
  double fit_exponent = 0.0;  // log-log slope of omega_c* vs g on the tail
  int fit_points = 0;
  double bound = 0.0;  // eps_c * d_c / (d_c + 1), d_c = 1
};

struct StudyResult {
  std::vector<StudyRow> rows;
  StudySummary summary;
  Histogram hist;
};

struct MaxPowerResult {
  double omega_star = 0.0;  // cold-side subsystem frequency at maximum J_c
  double j_c_star = 0.0;
  double eps_star = 0.0;
  double eps_carnot = 0.0;
  SteadyStateReport report;
};

// Full pipeline for one configuration.
SteadyStateReport solve_config(const SystemConfig& cfg, const SolveOptions& opt = {});

StudyResult run_sweep(const SweepSpec& spec, int threads = 0);

// Golden-section maximization of J_c over the frequency of the subsystem
// holding the cold bath (omega_c for standard topology, omega_h for
// swapped), bracket width 1e-5 * omega_h, ties broken toward the smaller
// frequency. Throws NoCoolingInInterval when nothing cools.
MaxPowerResult max_power_point(const SystemConfig& base, double lo, double hi);

struct SamplingRanges {
  double t_c_lo = 0.05, t_c_hi = 1.0;
  double t_h_hi = 4.0;
  double t_w_hi = 20.0;
  double kappa_lo = 1e-3, kappa_hi = 1e-2;
  double g_lo = 1e-3, g_hi = 0.15;
};

struct SamplingSpec {
  SystemConfig base;  // medium/topology/gating template; temperatures and rates resampled
  SamplingRanges ranges;
  int count = 10000;
  std::uint64_t seed = 0;
  double tail_threshold = 0.5;  // near-Carnot subset: eps*/eps_c above this
};

StudyResult random_campaign(const SamplingSpec& spec, int threads = 0);

struct LeakCurvePoint {
  double g = 0.0, omega_c = 0.0;
  double j_c = 0.0, j_c_norm = 0.0, eps_ratio = 0.0;
  bool cooling = false;
};

struct LeakCurves {
  std::vector<LeakCurvePoint> points;
  std::vector<double> g_values;
  std::vector<double> gaps;  // 1 - max eps/eps_c per g
  bool closed_all = true;    // every curve stays below eps_c
};

LeakCurves leak_curves(const SystemConfig& base, const std::vector<double>& g_values,
                       int points_per_curve = 160, int threads = 0);

struct SwappedBoundRow {
  double g = 0.0;
  double omega_star = 0.0, j_c_star = 0.0, eps_star = 0.0, eps_ratio = 0.0;
  bool within_bound = false;  // eps* <= eps_c/2 * (1 + 1e-3)
};

std::vector<SwappedBoundRow> swapped_bound_check(const SystemConfig& base,
                                                 const std::vector<double>& g_values);

bool laws_hold(const SteadyStateReport& rep);

}  // namespace qar

#endif
