#ifndef QAR_ORACLE_TLS_HPP
#define QAR_ORACLE_TLS_HPP

#include "qar/thermo.hpp"

namespace qar {

// Closed-form rate-equation engine for the coupled-TLS refrigerator in the
// infinite-work-temperature limit: the work transition is driven at equal
// up/down rates and the two excitation probabilities close on themselves,
// giving an independent oracle for the numeric solver.
//
// Rate convention: Gamma_alpha multiplies the de-excitation side of its
// transition (the excitation side carries the explicit detailed-balance
// factor exp(-omega/T)). Two constructors are provided:
//   * paper_rates:     Gamma_alpha = omega_alpha * kappa_alpha * n(omega_alpha)
//   * matched_rates:   Gamma_alpha = gamma_alpha(omega_alpha) * (1 + n(omega_alpha)),
// the latter reproducing the flat-cutoff Ohmic rates of the numeric solver,
// which is the mapping used by the oracle-vs-numeric equivalence runs.
struct RateParams {
  double gamma_w = 0.0, gamma_h = 0.0, gamma_c = 0.0;
  double c2 = 0.0, s2 = 0.0;
  double t_h = 0.0, t_c = 0.0;
  double omega_h = 0.0, omega_c_tilde = 0.0, omega_w = 0.0;
};

RateParams paper_rates(double omega_h, double omega_c, double g, double kappa_w,
                       double kappa_h, double kappa_c, double t_w, double t_h, double t_c);

RateParams matched_rates(const ValidatedConfig& cfg);

struct OccupationPair {
  double n_h = 0.0;
  double n_c = 0.0;
};

// Right-hand side of the two closed excitation equations.
OccupationPair rate_ode_derivatives(const RateParams& p, const OccupationPair& x);

// Unique fixed point of the pair (2x2 linear solve).
OccupationPair rate_fixed_point(const RateParams& p);

// Cycle flux K: every current is omega_alpha * K. Positive K means the
// machine refrigerates.
double cycle_flux(const RateParams& p);

// {J_w, J_h, J_c} = {omega_w K, -omega_h K, omega_c_tilde K}.
HeatCurrents analytic_currents(const RateParams& p);

}  // namespace qar

#endif
