#include "qar/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace qar {

Eigen::MatrixXcd dissipator(const Eigen::MatrixXcd& op, double rate) {
  if (rate < 0.0) throw NegativeRate("dissipator: rate must be nonnegative");
  const int d = int(op.rows());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd oo = op.adjoint() * op;
  Eigen::MatrixXcd sup = Eigen::kroneckerProduct(op.conjugate(), op).eval();
  sup -= 0.5 * Eigen::kroneckerProduct(id, oo).eval();
  sup -= 0.5 * Eigen::kroneckerProduct(oo.transpose(), id).eval();
  return rate * sup;
}

LiouvillianSet::LiouvillianSet(DressedSystem dressed, std::vector<Term> terms,
                               std::string degeneracy_note)
    : dressed_(std::move(dressed)), terms_(std::move(terms)), note_(std::move(degeneracy_note)) {
  for (const Term& t : terms_)
    if (t.rate < 0.0) throw NegativeRate("liouvillian term with negative rate");
}

namespace {

// Applies rate * D[O] to rho where O is a transition group (or its adjoint).
void apply_term(const DressedSystem& d, const Term& t, const Eigen::MatrixXcd& rho,
                Eigen::MatrixXcd& out) {
  if (t.rate == 0.0) return;
  const TransitionGroup& g = d.groups[size_t(t.group)];
  const int n = int(rho.rows());
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
  for (const TransitionElement& e : g.elems) {
    if (!t.raising)
      op(e.to, e.from) += e.amp;
    else
      op(e.from, e.to) += e.amp;
  }
  const Eigen::MatrixXcd oo = op.adjoint() * op;
  out.noalias() += t.rate * (op * rho * op.adjoint());
  out.noalias() -= (0.5 * t.rate) * (oo * rho);
  out.noalias() -= (0.5 * t.rate) * (rho * oo);
}

}  // namespace

Eigen::MatrixXcd LiouvillianSet::apply(BathRole bath, const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const Term& t : terms_)
    if (t.bath == bath) apply_term(dressed_, t, rho, out);
  return out;
}

Eigen::MatrixXcd LiouvillianSet::apply_total(const Eigen::MatrixXcd& rho) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const Term& t : terms_) apply_term(dressed_, t, rho, out);
  return out;
}

Eigen::MatrixXd LiouvillianSet::rate_matrix() const {
  const int d = dressed_.dim;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d, d);
  for (const Term& t : terms_) {
    if (t.rate == 0.0) continue;
    const TransitionGroup& g = dressed_.groups[size_t(t.group)];
    for (const TransitionElement& e : g.elems) {
      const double r = t.rate * e.amp * e.amp;
      if (!t.raising)
        w(e.to, e.from) += r;
      else
        w(e.from, e.to) += r;
    }
  }
  for (int i = 0; i < d; ++i) {
    w(i, i) = 0.0;
    w(i, i) = -w.col(i).sum();
  }
  return w;
}

Eigen::MatrixXcd LiouvillianSet::superoperator(BathRole bath) const {
  const int d = dressed_.dim;
  Eigen::MatrixXcd sup = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const Term& t : terms_) {
    if (t.bath != bath || t.rate == 0.0) continue;
    const TransitionGroup& g = dressed_.groups[size_t(t.group)];
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(d, d);
    for (const TransitionElement& e : g.elems) {
      if (!t.raising)
        op(e.to, e.from) += e.amp;
      else
        op(e.from, e.to) += e.amp;
    }
    sup += dissipator(op, t.rate);
  }
  return sup;
}

Eigen::MatrixXcd LiouvillianSet::superoperator_total(bool include_hamiltonian) const {
  Eigen::MatrixXcd sup = superoperator(BathRole::Work) + superoperator(BathRole::Hot) +
                         superoperator(BathRole::Cold);
  if (include_hamiltonian) {
    const int d = dressed_.dim;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd h = dressed_.energies.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    const std::complex<double> mi(0.0, -1.0);
    sup += mi * (Eigen::kroneckerProduct(id, h).eval() -
                 Eigen::kroneckerProduct(h.transpose(), id).eval());
  }
  return sup;
}

std::vector<std::pair<BathRole, Window>> LiouvillianSet::derived_windows() const {
  // The frequency span each bath actually drives, padded by half the gap to
  // the nearest undriven family member; audit metadata only.
  std::vector<std::pair<BathRole, Window>> out;
  for (BathRole bath : {BathRole::Work, BathRole::Hot, BathRole::Cold}) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const Term& t : terms_) {
      if (t.bath != bath || t.rate == 0.0 || t.raising) continue;
      const double f = std::abs(t.frequency);
      if (!any) {
        lo = hi = f;
        any = true;
      } else {
        lo = std::min(lo, f);
        hi = std::max(hi, f);
      }
    }
    if (!any) continue;
    double gap = std::min(lo, 0.1 * (hi > 0 ? hi : 1.0));
    for (const Term& t : terms_) {
      if (t.bath != bath || t.rate != 0.0 || t.raising) continue;
      const double f = std::abs(t.frequency);
      if (f < lo) gap = std::min(gap, lo - f);
      if (f > hi) gap = std::min(gap, f - hi);
    }
    out.push_back({bath, Window{std::max(0.0, lo - 0.5 * gap), hi + 0.5 * gap}});
  }
  return out;
}

void LiouvillianSet::write_ledger_csv(std::ostream& os) const {
  os << "bath,label,frequency,weight,rate,parasitic\n";
  for (const Term& t : terms_) {
    os << to_string(t.bath) << "," << to_string(t.label) << "," << t.frequency << ","
       << t.weight << "," << t.rate << "," << (t.parasitic ? 1 : 0) << "\n";
  }
}

namespace {

struct LabelWeight {
  JumpLabel label;
  double weight;  // relative to c2/s2 of the dressed frame
};

// Whether a label is driven by `bath` in the ideal (auto-gated) scheme.
bool ideal_assigned(const SystemConfig& c, BathRole bath, JumpLabel label) {
  if (c.topology == Topology::Standard) {
    if (bath == BathRole::Cold) return label == JumpLabel::B;
    if (c.gating == GatingScheme::TwoQutrit) {
      if (bath == BathRole::Hot) return label == JumpLabel::A;
      return label == JumpLabel::AMinus;  // work
    }
    // Single-cycle: the hot bath moves to the omega_plus transition and the
    // bare A transition is left undriven, giving the 43214 cycle only.
    if (bath == BathRole::Hot) return label == JumpLabel::APlus;
    return label == JumpLabel::AMinus;  // work
  }
  // Swapped: work on B; hot and cold share subsystem A.
  if (bath == BathRole::Work) return label == JumpLabel::B;
  if (bath == BathRole::Cold) return label == JumpLabel::A;
  return label == JumpLabel::APlus;  // hot
}

void emit_terms(std::vector<Term>& out, const SystemConfig& c, const DressedSystem& d,
                BathRole bath, const std::vector<LabelWeight>& labels) {
  const BathSpec& spec = c.bath(bath);
  const bool explicit_windows = !spec.coupling_windows.empty();
  for (size_t gi = 0; gi < d.groups.size(); ++gi) {
    const TransitionGroup& g = d.groups[gi];
    const LabelWeight* lw = nullptr;
    for (const LabelWeight& x : labels)
      if (x.label == g.label) lw = &x;
    if (!lw) continue;
    for (bool raising : {false, true}) {
      const double f = raising ? -g.frequency : g.frequency;
      double resp;
      if (explicit_windows)
        resp = gated_response(f, spec);
      else if (spec.filter)
        resp = filtered_response(f, spec);
      else
        resp = ideal_assigned(c, bath, g.label) ? spectral_response(f, spec) : 0.0;
      Term t;
      t.bath = bath;
      t.label = g.label;
      t.frequency = f;
      t.weight = lw->weight;
      t.rate = lw->weight * resp;
      t.group = int(gi);
      t.raising = raising;
      out.push_back(t);
    }
  }
}

std::string degeneracy_scan(const DressedSystem& d) {
  std::ostringstream note;
  const double scale = std::max(d.omega_h, d.omega_c_tilde);
  const double tol = 1e-9 * scale;
  // Degenerate dressed levels couple populations to coherences.
  Eigen::VectorXd e = d.energies;
  std::sort(e.data(), e.data() + e.size());
  for (int i = 1; i < e.size(); ++i)
    if (e[i] - e[i - 1] < tol) {
      note << "degenerate dressed levels near E=" << e[i] << "; ";
      break;
    }
  // Bohr-frequency collisions across labels invalidate the per-label
  // eigenoperator separation.
  for (size_t i = 0; i < d.groups.size(); ++i)
    for (size_t j = i + 1; j < d.groups.size(); ++j) {
      if (d.groups[i].label == d.groups[j].label) continue;
      if (std::abs(std::abs(d.groups[i].frequency) - std::abs(d.groups[j].frequency)) < tol) {
        note << "Bohr collision " << to_string(d.groups[i].label) << "/"
             << to_string(d.groups[j].label) << " at |f|=" << std::abs(d.groups[i].frequency)
             << "; ";
        return note.str();
      }
    }
  return note.str();
}

}  // namespace

LiouvillianSet assemble_standard(const ValidatedConfig& cfg, const DressedSystem& d) {
  const SystemConfig& c = cfg.get();
  std::vector<Term> terms;
  const std::vector<LabelWeight> a_side = {
      {JumpLabel::A, d.c2}, {JumpLabel::AMinus, d.s2}, {JumpLabel::APlus, d.s2}};
  const std::vector<LabelWeight> b_side = {{JumpLabel::B, d.c2}};
  emit_terms(terms, c, d, BathRole::Work, a_side);
  emit_terms(terms, c, d, BathRole::Hot, a_side);
  emit_terms(terms, c, d, BathRole::Cold, b_side);
  return LiouvillianSet(d, std::move(terms), degeneracy_scan(d));
}

LiouvillianSet assemble_swapped(const ValidatedConfig& cfg, const DressedSystem& d) {
  const SystemConfig& c = cfg.get();
  std::vector<Term> terms;
  const std::vector<LabelWeight> a_side = {
      {JumpLabel::A, d.c2}, {JumpLabel::AMinus, d.s2}, {JumpLabel::APlus, d.s2}};
  const std::vector<LabelWeight> b_side = {{JumpLabel::B, d.c2}};
  emit_terms(terms, c, d, BathRole::Hot, a_side);
  emit_terms(terms, c, d, BathRole::Cold, a_side);
  emit_terms(terms, c, d, BathRole::Work, b_side);
  return LiouvillianSet(d, std::move(terms), degeneracy_scan(d));
}

LiouvillianSet assemble_with_leak(const ValidatedConfig& cfg, const DressedSystem& d) {
  const SystemConfig& c = cfg.get();
  LiouvillianSet base = assemble_standard(cfg, d);
  std::vector<Term> terms = base.terms();
  const LeakSpec& leak = *c.leak;
  // The parasitic bath drives the shared transition with an attenuated copy
  // of its own thermal response.
  const BathRole parasite =
      leak.target == LeakTarget::WorkTransition ? BathRole::Hot : BathRole::Work;
  const JumpLabel target =
      leak.target == LeakTarget::WorkTransition ? JumpLabel::AMinus : JumpLabel::A;
  const double weight =
      (target == JumpLabel::A ? d.c2 : d.s2) * leak.strength;
  const BathSpec& spec = c.bath(parasite);
  for (size_t gi = 0; gi < d.groups.size(); ++gi) {
    const TransitionGroup& g = d.groups[gi];
    if (g.label != target) continue;
    for (bool raising : {false, true}) {
      const double f = raising ? -g.frequency : g.frequency;
      Term t;
      t.bath = parasite;
      t.label = g.label;
      t.frequency = f;
      t.weight = weight;
      t.rate = weight * spectral_response(f, spec);
      t.parasitic = true;
      t.group = int(gi);
      t.raising = raising;
      terms.push_back(t);
    }
  }
  return LiouvillianSet(d, std::move(terms), base.degeneracy_note());
}

LiouvillianSet assemble(const ValidatedConfig& cfg, const DressedSystem& d) {
  if (cfg->topology == Topology::Swapped) return assemble_swapped(cfg, d);
  if (cfg->leak) return assemble_with_leak(cfg, d);
  return assemble_standard(cfg, d);
}

}  // namespace qar
