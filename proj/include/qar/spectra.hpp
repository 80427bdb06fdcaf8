#ifndef QAR_SPECTRA_HPP
#define QAR_SPECTRA_HPP

#include <stdexcept>

#include "qar/config.hpp"

namespace qar {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// n = 1/(exp(omega/T) - 1). Requires omega > 0, T > 0; callers needing the
// signed-frequency continuation must use spectral_response.
double bose_occupation(double omega, double temperature);

// J(omega) = kappa * omega^p / cutoff^(1-p) * exp(-omega/cutoff), omega > 0.
double ohmic_density(double omega, double kappa, double p, double cutoff);

// gamma(omega) = 2*pi*J(omega).
double damping_rate(double omega, const BathSpec& bath);

// Two-branch KMS response:
//   omega > 0: gamma(omega) * (1 + n(omega))      (emission)
//   omega < 0: gamma(|omega|) * n(|omega|)        (absorption)
//   omega = 0: continuous limit, 2*pi*kappa*T for p = 1, 0 for p > 1.
double spectral_response(double omega, const BathSpec& bath);

// Principal-value frequency shift of Eq.-type filtered response,
// Delta(omega) = P int_0^inf G(w')/(omega - w') dw', evaluated by
// symmetric excision around the pole plus adaptive Gauss-Kronrod on the
// regular pieces. Throws QuadratureFailure if the estimated relative
// error exceeds 1e-6.
double lamb_shift_pv(double omega, const BathSpec& bath);

// Lorentzian reshaping of the unfiltered response around the filter center:
//   (kappa_f/pi) * (pi G(w))^2 / [(w - w_f - Delta(w))^2 + (pi G(w))^2]
// for w > 0; the negative branch follows from detailed balance applied to
// the filtered positive branch. Requires bath.filter.
double filtered_response(double omega, const BathSpec& bath);

// Hard-window gating: spectral_response if |omega| falls inside any
// coupling window, else 0.
double gated_response(double omega, const BathSpec& bath);

// Mode dispatcher: explicit windows gate the plain response; otherwise a
// filter reshapes it; otherwise the plain response.
double bath_response(double omega, const BathSpec& bath);

}  // namespace qar

#endif
