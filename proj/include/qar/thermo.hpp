#ifndef QAR_THERMO_HPP
#define QAR_THERMO_HPP

#include <Eigen/Dense>
#include <string>

#include "qar/liouvillian.hpp"

namespace qar {

class DegenerateSteadyState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotRefrigerating : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemperatureOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SolveOptions {
  bool svd_audit = false;           // cross-check the solve against an SVD nullspace
  int full_path_dim_cap = 4096;     // refuse d^2 solves beyond this (d^2 entries per row)
  double agreement_tol = 1e-10;     // rate-path vs superoperator-path agreement
  double truncation_pop_tol = 1e-8; // top-two Fock level warning threshold
  double weak_coupling_ratio = 0.1; // g^2 <b†b> / omega_c^2 validity threshold
};

struct HeatCurrents {
  double work = 0.0, hot = 0.0, cold = 0.0;
};

struct SteadyStateFlags {
  bool cooling = false;
  bool degenerate_nullspace = false;
  bool truncation_warning = false;
  bool weak_coupling_valid = true;
  bool population_path = true;  // rate-matrix shortcut used
};

struct SteadyStateReport {
  Eigen::MatrixXcd rho;
  double j_w = 0.0, j_h = 0.0, j_c = 0.0;
  double sigma = 0.0;
  double eps = 0.0;  // meaningful only when eps_defined
  bool eps_defined = false;
  double eps_carnot = 0.0;
  double first_law_residual = 0.0;
  double solve_residual = 0.0;
  double trace_dev = 0.0;
  double min_eigenvalue = 0.0;
  double weak_coupling_ratio = 0.0;
  SteadyStateFlags flags;
  std::string degeneracy_note;
};

// Steady populations of the classical rate matrix: deflated dense solve
// (one row replaced by the trace constraint).
Eigen::VectorXd steady_populations(const Eigen::MatrixXd& rate_matrix);

// Independent audit path: nullspace via SVD. Throws DegenerateSteadyState
// if the nullspace dimension exceeds one.
Eigen::VectorXd steady_populations_svd(const Eigen::MatrixXd& rate_matrix);

// Full steady state honoring the population-sector license; falls back to
// the d^2 superoperator nullspace when degeneracies are flagged.
Eigen::MatrixXcd steady_state(const LiouvillianSet& liou, const SolveOptions& opt = {});

// J_alpha = Tr{(L_alpha rho) H_dressed}; heat into the system is positive.
HeatCurrents heat_currents(const LiouvillianSet& liou, const Eigen::MatrixXcd& rho);

// eps_c = (T_w - T_h) T_c / ((T_h - T_c) T_w); requires T_w > T_h > T_c > 0.
double carnot_cop(double t_w, double t_h, double t_c);

// Largest dressed cold frequency with refrigeration, eps_c * omega_w; at
// resonance omega_h = omega_c_tilde + omega_w this is eps_c/(1+eps_c)*omega_h.
double cooling_window_max(double t_w, double t_h, double t_c, double omega_h);

enum class Cycle { Cooling4324, Cooling3213, Inverse4324, Inverse3213 };

// Per-cycle entropy production -omega_c_tilde/T_c - omega_w/T_w + omega_h/T_h
// (cooling direction); inverse cycles return the negation.
double cycle_entropy(double omega_h, double omega_c_tilde, double omega_w, double t_w,
                     double t_h, double t_c, Cycle cycle);

// Full report: steady state, currents, laws, COP and flags.
SteadyStateReport solve_report(const ValidatedConfig& cfg, const LiouvillianSet& liou,
                               const SolveOptions& opt = {});

}  // namespace qar

#endif
