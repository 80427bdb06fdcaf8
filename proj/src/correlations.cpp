#include "qar/correlations.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace qar {

namespace {
constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;
}  // namespace

Eigen::MatrixXcd to_bare_basis(const Eigen::MatrixXcd& rho_dressed, const DressedSystem& d,
                               int* dim_b_out) {
  if (d.medium == Medium::TLS) {
    const Eigen::MatrixXd& v = d.bare_eigenvectors;
    Eigen::MatrixXcd rho = v * rho_dressed * v.transpose();
    // Coupled-TLS steady states must keep the two-block structure in the
    // bare basis; anything else indicates degeneracy or a solver fault.
    double off = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int c = 2; c < 4; ++c)
        off = std::max({off, std::abs(rho(r, c)), std::abs(rho(c, r))});
    if (off > 1e-10)
      throw StructureViolation("bare-basis TLS state leaks outside the two blocks");
    if (dim_b_out) *dim_b_out = 2;
    return rho;
  }

  // Polaron frame: U = sum_n |n><n| (x) D(-beta n). Undoing it displaces
  // each A sector, so pad the B space to hold the displaced tails.
  const double beta = d.g / d.omega_c;
  const double max_disp = beta * double(d.dim_a - 1);
  const int pad = int(std::ceil(4.0 * max_disp * std::sqrt(double(d.dim_b)) +
                                4.0 * max_disp * max_disp)) + 8;
  const int nb = d.dim_b + pad;
  Eigen::MatrixXd ladder = Eigen::MatrixXd::Zero(nb, nb);  // b† - b
  for (int m = 1; m < nb; ++m) {
    ladder(m, m - 1) = std::sqrt(double(m));
    ladder(m - 1, m) = -std::sqrt(double(m));
  }
  std::vector<Eigen::MatrixXd> disp(size_t(d.dim_a));  // D(beta n)
  for (int n = 0; n < d.dim_a; ++n)
    disp[size_t(n)] = (beta * double(n) * ladder).exp();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d.dim_a * nb, d.dim_a * nb);
  for (int n = 0; n < d.dim_a; ++n)
    for (int np = 0; np < d.dim_a; ++np) {
      Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(nb, nb);
      for (int m = 0; m < d.dim_b; ++m)
        for (int mp = 0; mp < d.dim_b; ++mp)
          block(m, mp) = rho_dressed(d.index(n, m), d.index(np, mp));
      block = disp[size_t(n)] * block * disp[size_t(np)].transpose();
      for (int m = 0; m < nb; ++m)
        for (int mp = 0; mp < nb; ++mp) out(n * nb + m, np * nb + mp) = block(m, mp);
    }
  if (dim_b_out) *dim_b_out = nb;
  return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-14) s -= p * std::log(p);
  }
  return s;
}

Eigen::MatrixXcd partial_trace_a(const Eigen::MatrixXcd& rho, int dim_a, int dim_b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a)
    for (int m = 0; m < dim_b; ++m)
      for (int mp = 0; mp < dim_b; ++mp) out(m, mp) += rho(a * dim_b + m, a * dim_b + mp);
  return out;
}

Eigen::MatrixXcd partial_trace_b(const Eigen::MatrixXcd& rho, int dim_a, int dim_b) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_a, dim_a);
  for (int a = 0; a < dim_a; ++a)
    for (int ap = 0; ap < dim_a; ++ap)
      for (int m = 0; m < dim_b; ++m) out(a, ap) += rho(a * dim_b + m, ap * dim_b + m);
  return out;
}

double mutual_information(const Eigen::MatrixXcd& rho_ab, int dim_a, int dim_b) {
  const double sa = von_neumann_entropy(partial_trace_b(rho_ab, dim_a, dim_b));
  const double sb = von_neumann_entropy(partial_trace_a(rho_ab, dim_a, dim_b));
  const double sab = von_neumann_entropy(rho_ab);
  return sa + sb - sab;
}

namespace {

// Classical-correlation objective for projective measurement along the
// Bloch direction (theta, phi) on the chosen qubit.
double holevo_objective(const Eigen::MatrixXcd& rho, MeasuredParty party, double theta,
                        double phi) {
  Eigen::Vector2cd up, dn;
  up << std::cos(0.5 * theta), std::exp(cd(0.0, phi)) * std::sin(0.5 * theta);
  dn << -std::exp(cd(0.0, -phi)) * std::sin(0.5 * theta), std::cos(0.5 * theta);

  const Eigen::MatrixXcd rho_other = party == MeasuredParty::A
                                         ? partial_trace_a(rho, 2, 2)
                                         : partial_trace_b(rho, 2, 2);
  double obj = von_neumann_entropy(rho_other);
  for (const Eigen::Vector2cd& v : {up, dn}) {
    Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
    // <v| rho |v> on the measured slot leaves the other qubit's operator.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            const int row = party == MeasuredParty::A ? i * 2 + k : k * 2 + i;
            const int col = party == MeasuredParty::A ? j * 2 + l : l * 2 + j;
            cond(k, l) += std::conj(v[i]) * rho(row, col) * v[j];
          }
    const double p = cond.trace().real();
    if (p > 1e-14) obj -= p * von_neumann_entropy(Eigen::MatrixXcd(cond / p));
  }
  return obj;
}

}  // namespace

DiscordResult discord(const Eigen::MatrixXcd& rho_ab, MeasuredParty party) {
  DiscordResult out;
  out.total = mutual_information(rho_ab, 2, 2);

  // Grid stage. theta in [0, pi), phi in [0, 2 pi); the projector pair at
  // theta=pi/2 sits exactly on the grid.
  constexpr int kGrid = 64;
  double best = -1.0;
  std::vector<std::pair<double, std::pair<double, double>>> cells;
  cells.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double th = kPi * double(i) / kGrid;
      const double ph = 2.0 * kPi * double(j) / kGrid;
      const double v = holevo_objective(rho_ab, party, th, ph);
      cells.push_back({v, {th, ph}});
      best = std::max(best, v);
    }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // deterministic tie-break toward small angles
  });

  // Pattern refinement from the best few starting cells.
  double best_v = -1.0, best_th = 0.0, best_ph = 0.0;
  const int starts = std::min<size_t>(4, cells.size());
  for (int s = 0; s < starts; ++s) {
    double th = cells[size_t(s)].second.first;
    double ph = cells[size_t(s)].second.second;
    double v = cells[size_t(s)].first;
    double step = kPi / kGrid;
    while (step > 1e-9) {
      bool improved = false;
      const double cand[4][2] = {{th + step, ph}, {th - step, ph}, {th, ph + step},
                                 {th, ph - step}};
      for (const auto& c : cand) {
        const double vv = holevo_objective(rho_ab, party, c[0], c[1]);
        if (vv > v + 1e-15) {
          v = vv;
          th = c[0];
          ph = c[1];
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    if (v > best_v) {
      best_v = v;
      best_th = th;
      best_ph = ph;
    }
  }
  out.classical = best_v;
  out.theta = best_th;
  out.phi = best_ph;
  out.discord = out.total - out.classical;
  return out;
}

PptResult ppt_check(const Eigen::MatrixXcd& rho_ab) {
  PptResult out;
  Eigen::Matrix4cd pt;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp)
          pt(a * 2 + b, ap * 2 + bp) = rho_ab(a * 2 + bp, ap * 2 + b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  out.entangled = out.min_eigenvalue < -1e-12;

  // Closed form for two-block states: least eigenvalue over the two 2x2
  // blocks, [tr - sqrt((diff)^2 + 4 |off|^2)] / 2.
  double off = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 2; c < 4; ++c)
      off = std::max({off, std::abs(rho_ab(r, c)), std::abs(rho_ab(c, r))});
  if (off <= 1e-10) {
    const auto block_min = [&rho_ab](int base) {
      const double tr = rho_ab(base, base).real() + rho_ab(base + 1, base + 1).real();
      const double df = rho_ab(base, base).real() - rho_ab(base + 1, base + 1).real();
      const double od = std::abs(rho_ab(base, base + 1));
      return 0.5 * (tr - std::sqrt(df * df + 4.0 * od * od));
    };
    out.closed_form = std::min(block_min(0), block_min(2));
  }
  return out;
}

CorrelationReport correlation_report(const Eigen::MatrixXcd& rho_dressed,
                                     const DressedSystem& d, MeasuredParty party) {
  CorrelationReport rep;
  int nb = 0;
  const Eigen::MatrixXcd rho = to_bare_basis(rho_dressed, d, &nb);
  rep.s_a = von_neumann_entropy(partial_trace_b(rho, d.dim_a, nb));
  rep.s_b = von_neumann_entropy(partial_trace_a(rho, d.dim_a, nb));
  rep.s_ab = von_neumann_entropy(rho);
  rep.total = rep.s_a + rep.s_b - rep.s_ab;
  rep.measured_party = party;
  if (d.medium == Medium::TLS) {
    const DiscordResult dr = discord(rho, party);
    rep.discord_defined = true;
    rep.classical = dr.classical;
    rep.discord = dr.discord;
    rep.ppt_min_eigenvalue = ppt_check(rho).min_eigenvalue;
  }
  return rep;
}

}  // namespace qar
