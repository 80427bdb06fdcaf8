#ifndef QAR_MEDIUM_HPP
#define QAR_MEDIUM_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qar/config.hpp"

namespace qar {

// Lowering-operator labels in the dressed frame. APlus ("ab") lowers both
// subsystems, AMinus ("ab+") lowers A while raising B.
enum class JumpLabel { A, B, AMinus, APlus };
std::string to_string(JumpLabel);

struct TransitionElement {
  int from = 0;  // higher-energy dressed index
  int to = 0;
  double amp = 0.0;
};

// All matrix elements of one labeled jump operator sharing one exact Bohr
// frequency. `frequency` is signed: E_from - E_to, positive when the
// operator genuinely lowers the energy.
struct TransitionGroup {
  JumpLabel label = JumpLabel::A;
  double frequency = 0.0;
  std::vector<TransitionElement> elems;
};

struct DressedFrequencies {
  double omega_c_tilde = 0.0;  // dressed B frequency
  double mixing_angle = 0.0;   // theta for TLS, 2*beta otherwise
  double c2 = 0.0;
  double s2 = 0.0;
};

struct DressedSystem {
  Medium medium = Medium::TLS;
  int dim = 0;
  int dim_a = 0;
  int dim_b = 0;
  double omega_h = 0.0;
  double omega_c = 0.0;
  double g = 0.0;
  double omega_c_tilde = 0.0;
  double omega_w = 0.0;     // omega_h - omega_c_tilde
  double omega_plus = 0.0;  // omega_h + omega_c_tilde
  double c2 = 0.0;
  double s2 = 0.0;
  Eigen::VectorXd energies;  // diagonal of H_dressed
  std::vector<TransitionGroup> groups;
  // TLS only: columns are dressed eigenstates |1..4> in the bare product
  // basis {++, +-, -+, --}; used by the correlations module.
  Eigen::MatrixXd bare_eigenvectors;

  // Full labeled operator (lowering form) as a dense matrix.
  Eigen::MatrixXcd jump_operator(JumpLabel label) const;
  // Occupation operator b~†b~ diagonal (for the weak-coupling validity check).
  Eigen::VectorXd b_occupation_diagonal() const;
  int index(int n_a, int m_b) const { return n_a * dim_b + m_b; }
};

// sin/cos mixing and the dressed B frequency.
//   TLS : omega_c_tilde = sqrt(omega_c^2 + 4 g^2), sin(theta) = 2g/omega_c_tilde
//   TLOS/OMS: omega_c_tilde = omega_c, c^2 = 1, s^2 = (g/omega_c)^2
DressedFrequencies dressed_frequencies(Medium medium, double omega_h, double omega_c, double g);

DressedSystem build_tls(const ValidatedConfig& cfg);
DressedSystem build_tlos(const ValidatedConfig& cfg);
DressedSystem build_oms(const ValidatedConfig& cfg);
DressedSystem build_dressed(const ValidatedConfig& cfg);

}  // namespace qar

#endif
