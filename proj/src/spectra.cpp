#include "qar/spectra.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace qar {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("bose_occupation: omega must be positive");
  if (!(temperature > 0.0)) throw DomainError("bose_occupation: T must be positive");
  return 1.0 / std::expm1(omega / temperature);
}

double ohmic_density(double omega, double kappa, double p, double cutoff) {
  if (!(omega > 0.0)) throw DomainError("ohmic_density: omega must be positive");
  return kappa * std::pow(omega, p) * std::pow(cutoff, p - 1.0) * std::exp(-omega / cutoff);
}

double damping_rate(double omega, const BathSpec& bath) {
  return kTwoPi * ohmic_density(omega, bath.kappa, bath.ohmic_exponent, bath.cutoff);
}

double spectral_response(double omega, const BathSpec& bath) {
  if (omega == 0.0) {
    // Continuous limit of gamma(w) n(w) as w -> 0.
    if (bath.ohmic_exponent == 1.0) return kTwoPi * bath.kappa * bath.temperature;
    return 0.0;
  }
  const double aw = std::abs(omega);
  const double g = damping_rate(aw, bath);
  const double n = bose_occupation(aw, bath.temperature);
  return omega > 0.0 ? g * (1.0 + n) : g * n;
}

double lamb_shift_pv(double omega, const BathSpec& bath) {
  if (!(omega > 0.0)) throw DomainError("lamb_shift_pv: omega must be positive");
  using boost::math::quadrature::gauss_kronrod;
  const auto response = [&bath](double w) { return spectral_response(w, bath); };
  const double g0 = response(omega);
  // Numerical derivative for the removable point w' = omega.
  const double h = 1e-7 * omega;
  const double dg = (response(omega + h) - response(omega - h)) / (2.0 * h);

  // P int_0^{2w} dw'/(w - w') = 0, so on [0, 2w] only the regularized part
  // remains; the tail beyond 2w has no singularity.
  const auto regular = [&](double w) {
    const double d = omega - w;
    if (std::abs(d) < 1e-12 * omega) return -dg;
    return (response(w) - g0) / d;
  };
  double err1 = 0.0, err2 = 0.0;
  const double part1 = gauss_kronrod<double, 31>::integrate(regular, 0.0, 2.0 * omega, 12,
                                                            1e-10, &err1);
  const auto tail = [&](double w) { return response(w) / (omega - w); };
  const double hi = 2.0 * omega + 60.0 * bath.cutoff;
  const double part2 = gauss_kronrod<double, 31>::integrate(tail, 2.0 * omega, hi, 12,
                                                            1e-10, &err2);
  const double value = part1 + part2;
  const double scale = std::max(std::abs(value), 1e-300);
  if ((err1 + err2) / scale > 1e-6)
    throw QuadratureFailure("lamb_shift_pv: principal-value integral did not converge to 1e-6");
  return value;
}

namespace {

double filtered_positive(double omega, const BathSpec& bath) {
  const FilterSpec& f = *bath.filter;
  const double G = spectral_response(omega, bath);
  const double piG = M_PI * G;
  const double delta =
      f.lamb_shift == LambShiftMode::NumericPV ? lamb_shift_pv(omega, bath) : 0.0;
  const double det = omega - f.center - delta;
  return (f.strength / M_PI) * (piG * piG) / (det * det + piG * piG);
}

}  // namespace

double filtered_response(double omega, const BathSpec& bath) {
  if (!bath.filter) throw DomainError("filtered_response: bath has no filter");
  if (omega == 0.0) return 0.0;
  if (omega > 0.0) return filtered_positive(omega, bath);
  // Negative branch by detailed balance against the filtered positive
  // branch; keeps the master equation thermodynamically consistent.
  const double aw = -omega;
  return filtered_positive(aw, bath) * std::exp(-aw / bath.temperature);
}

double gated_response(double omega, const BathSpec& bath) {
  const double aw = std::abs(omega);
  for (const Window& w : bath.coupling_windows)
    if (aw >= w.lo && aw <= w.hi) return spectral_response(omega, bath);
  return 0.0;
}

double bath_response(double omega, const BathSpec& bath) {
  if (!bath.coupling_windows.empty()) return gated_response(omega, bath);
  if (bath.filter) return filtered_response(omega, bath);
  return spectral_response(omega, bath);
}

}  // namespace qar
