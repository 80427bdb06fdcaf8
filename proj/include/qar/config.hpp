#ifndef QAR_CONFIG_HPP
#define QAR_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qar {

// Working-medium variants. TLS: two qubits; TLOS: qubit A + oscillator B;
// OMS: two oscillators.
enum class Medium { TLS, TLOS, OMS };

// Standard: work+hot baths on subsystem A, cold bath on B.
// Swapped: hot+cold baths on A, work bath on B.
enum class Topology { Standard, Swapped };

enum class BathRole { Work, Hot, Cold };

enum class LambShiftMode { Zero, NumericPV };

// Ideal gating schemes. TwoQutrit drives the a / ab+ transitions by the
// hot / work baths (two three-level cycles sharing the work transition).
// SingleCycle drives ab instead of a by the hot bath, leaving a undriven,
// so exactly one four-transition cycle remains.
enum class GatingScheme { TwoQutrit, SingleCycle };

enum class LeakTarget { WorkTransition, HotTransition };

enum class MeasuredParty { A, B };

struct FilterSpec {
  double center = 0.0;    // omega_f
  double strength = 0.0;  // kappa_f
  LambShiftMode lamb_shift = LambShiftMode::Zero;
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

struct BathSpec {
  BathRole role = BathRole::Work;
  double temperature = 0.0;     // T_alpha, k_B = hbar = 1
  double kappa = 0.0;           // damping prefactor
  double ohmic_exponent = 1.0;  // p; the spectral-density power
  double cutoff = 0.0;          // omega_ct; 0 means "fill default"
  std::optional<FilterSpec> filter;
  std::vector<Window> coupling_windows;  // explicit gating intervals on |omega|
};

struct LeakSpec {
  LeakTarget target = LeakTarget::WorkTransition;
  // Attenuation of the parasitic coupling relative to the primary bath's
  // kappa on the shared transition. The overlap of realistic filtered
  // spectra is partial; 1.0 would mean full-strength double drive.
  double strength = 0.05;
};

struct SystemConfig {
  Medium medium = Medium::TLS;
  int truncation_A = 2;
  int truncation_B = 2;
  double omega_h = 1.0;  // subsystem A frequency
  double omega_c = 0.1;  // subsystem B frequency
  double g = 0.0;
  Topology topology = Topology::Standard;
  GatingScheme gating = GatingScheme::TwoQutrit;
  BathSpec work, hot, cold;
  std::optional<LeakSpec> leak;
  double scale_ghz = 0.0;  // optional physical scale, metadata only

  const BathSpec& bath(BathRole r) const {
    switch (r) {
      case BathRole::Work: return work;
      case BathRole::Hot: return hot;
      default: return cold;
    }
  }
  BathSpec& bath(BathRole r) {
    switch (r) {
      case BathRole::Work: return work;
      case BathRole::Hot: return hot;
      default: return cold;
    }
  }
};

enum class ConfigError {
  TemperatureOrderViolation,
  NonPositiveParameter,
  TruncationTooSmall,
  WindowsInvalid,
  LeakInvalid,
};

struct Violation {
  ConfigError code;
  std::string key;  // offending config key
  std::string detail;
};

std::string to_string(ConfigError);
std::string to_string(Medium);
std::string to_string(Topology);
std::string to_string(BathRole);
std::string to_string(GatingScheme);
std::string to_string(LeakTarget);

struct ValidationResult;

// Wrapper types every downstream module consumes. Constructed only through
// validate(); immutable afterwards, safe to share across workers.
class ValidatedConfig {
 public:
  const SystemConfig& get() const { return cfg_; }
  const SystemConfig* operator->() const { return &cfg_; }

 private:
  explicit ValidatedConfig(SystemConfig c) : cfg_(std::move(c)) {}
  SystemConfig cfg_;
  friend struct ValidationResult;
};

struct ValidationResult {
  std::optional<ValidatedConfig> config;  // set iff violations is empty
  std::vector<Violation> violations;
  bool ok() const { return config.has_value(); }
  static ValidationResult success(SystemConfig c) {
    ValidationResult r;
    r.config = ValidatedConfig(std::move(c));
    return r;
  }
};

// Normalizes and checks a configuration. Fills defaults (cutoff =
// 1000*omega_h, lamb shift mode already defaulted in FilterSpec) and, for
// the standard topology, re-expresses every frequency-like quantity in
// units of omega_h. Swapped-topology configs keep the units they were
// written in: there the A frequency is a sweep variable and rescaling by
// it would change units point by point.
ValidationResult validate(SystemConfig c);

// Throwing convenience for callers that treat a bad config as fatal.
ValidatedConfig validate_or_throw(SystemConfig c);

class ConfigException : public std::runtime_error {
 public:
  explicit ConfigException(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace qar

#endif
