#ifndef QAR_LIOUVILLIAN_HPP
#define QAR_LIOUVILLIAN_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "qar/medium.hpp"
#include "qar/spectra.hpp"

namespace qar {

class NegativeRate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One Lindblad dissipator rate * D[O]. `frequency` is the signed Bohr
// frequency the bath response was evaluated at: positive for the lowering
// member D[O], negative for its adjoint D[O†].
struct Term {
  BathRole bath = BathRole::Work;
  JumpLabel label = JumpLabel::A;
  double frequency = 0.0;
  double weight = 0.0;  // c2 or s2, times leak attenuation when parasitic
  double rate = 0.0;    // weight * bath response at `frequency`
  bool parasitic = false;
  int group = -1;  // index into DressedSystem::groups
  bool raising = false;
};

// Matrix representation of rho -> rate * (O rho O† - 1/2 {O†O, rho}),
// column-major vec convention.
Eigen::MatrixXcd dissipator(const Eigen::MatrixXcd& op, double rate);

class LiouvillianSet {
 public:
  LiouvillianSet(DressedSystem dressed, std::vector<Term> terms, std::string degeneracy_note);

  const DressedSystem& dressed() const { return dressed_; }
  const std::vector<Term>& terms() const { return terms_; }

  // True when the population sector closes on itself (no degenerate dressed
  // levels and no Bohr-frequency collisions across labels), licensing the
  // d-dimensional classical rate-matrix solve.
  bool population_sector_licensed() const { return note_.empty(); }
  const std::string& degeneracy_note() const { return note_; }

  // L_alpha applied to a density matrix (operator form, any d).
  Eigen::MatrixXcd apply(BathRole bath, const Eigen::MatrixXcd& rho) const;
  Eigen::MatrixXcd apply_total(const Eigen::MatrixXcd& rho) const;

  // Classical generator on populations: W(j,i) = rate of i -> j, columns
  // summing to zero.
  Eigen::MatrixXd rate_matrix() const;

  // Dense d^2 x d^2 blocks; meant for small systems and audits.
  Eigen::MatrixXcd superoperator(BathRole bath) const;
  Eigen::MatrixXcd superoperator_total(bool include_hamiltonian = false) const;

  // Ideal gating windows implied by the assembled terms, for audit output.
  std::vector<std::pair<BathRole, Window>> derived_windows() const;

  void write_ledger_csv(std::ostream& os) const;

 private:
  DressedSystem dressed_;
  std::vector<Term> terms_;
  std::string note_;
};

LiouvillianSet assemble_standard(const ValidatedConfig& cfg, const DressedSystem& dressed);
LiouvillianSet assemble_swapped(const ValidatedConfig& cfg, const DressedSystem& dressed);
LiouvillianSet assemble_with_leak(const ValidatedConfig& cfg, const DressedSystem& dressed);
// Dispatch on topology / leak.
LiouvillianSet assemble(const ValidatedConfig& cfg, const DressedSystem& dressed);

}  // namespace qar

#endif
