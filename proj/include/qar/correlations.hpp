#ifndef QAR_CORRELATIONS_HPP
#define QAR_CORRELATIONS_HPP

#include <Eigen/Dense>
#include <optional>

#include "qar/medium.hpp"

namespace qar {

class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dressed steady state expressed in the bare product basis. For the TLS the
// rotation is the (theta/2) eigenvector matrix and the result carries the
// two-block X structure; for TLOS/OMS the map is the conditional
// displacement of the polaron frame (B Fock space padded so the displaced
// state fits) and no structural claim is made.
Eigen::MatrixXcd to_bare_basis(const Eigen::MatrixXcd& rho_dressed, const DressedSystem& d,
                               int* dim_b_out = nullptr);

double von_neumann_entropy(const Eigen::MatrixXcd& rho);

Eigen::MatrixXcd partial_trace_a(const Eigen::MatrixXcd& rho, int dim_a, int dim_b);
Eigen::MatrixXcd partial_trace_b(const Eigen::MatrixXcd& rho, int dim_a, int dim_b);

// S_A + S_B - S_AB in nats.
double mutual_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b);

struct DiscordResult {
  double discord = 0.0;
  double classical = 0.0;
  double total = 0.0;
  double theta = 0.0;  // optimal projector Bloch angles
  double phi = 0.0;
};

// Quantum discord of a two-qubit state with rank-1 projective measurements
// on the chosen party: 64x64 angular grid, then local pattern refinement.
DiscordResult discord(const Eigen::MatrixXcd& rho_ab, MeasuredParty party);

struct PptResult {
  double min_eigenvalue = 0.0;
  bool entangled = false;
  // Closed-form block eigenvalue, present when the state has the two-block
  // structure of the coupled-TLS steady state.
  std::optional<double> closed_form;
};

PptResult ppt_check(const Eigen::MatrixXcd& rho_ab);

struct CorrelationReport {
  double s_a = 0.0, s_b = 0.0, s_ab = 0.0;
  double total = 0.0;
  // TLS only:
  bool discord_defined = false;
  double classical = 0.0;
  double discord = 0.0;
  double ppt_min_eigenvalue = 0.0;
  MeasuredParty measured_party = MeasuredParty::B;
};

CorrelationReport correlation_report(const Eigen::MatrixXcd& rho_dressed,
                                     const DressedSystem& d,
                                     MeasuredParty party = MeasuredParty::B);

}  // namespace qar

#endif
