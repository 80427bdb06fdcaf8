#include "qar/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qar {

std::string to_string(ConfigError e) {
  switch (e) {
    case ConfigError::TemperatureOrderViolation: return "TemperatureOrderViolation";
    case ConfigError::NonPositiveParameter: return "NonPositiveParameter";
    case ConfigError::TruncationTooSmall: return "TruncationTooSmall";
    case ConfigError::WindowsInvalid: return "WindowsInvalid";
    case ConfigError::LeakInvalid: return "LeakInvalid";
  }
  return "UnknownError";
}

std::string to_string(Medium m) {
  switch (m) {
    case Medium::TLS: return "TLS";
    case Medium::TLOS: return "TLOS";
    default: return "OMS";
  }
}

std::string to_string(Topology t) {
  return t == Topology::Standard ? "standard" : "swapped";
}

std::string to_string(BathRole r) {
  switch (r) {
    case BathRole::Work: return "work";
    case BathRole::Hot: return "hot";
    default: return "cold";
  }
}

std::string to_string(GatingScheme s) {
  return s == GatingScheme::TwoQutrit ? "two_qutrit" : "single_cycle";
}

std::string to_string(LeakTarget t) {
  return t == LeakTarget::WorkTransition ? "work_transition" : "hot_transition";
}

ConfigException::ConfigException(std::vector<Violation> v)
    : std::runtime_error([&v] {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& x : v)
          os << " [" << to_string(x.code) << " " << x.key << ": " << x.detail << "]";
        return os.str();
      }()),
      violations_(std::move(v)) {}

namespace {

void require_positive(std::vector<Violation>& out, double v, const std::string& key) {
  if (!(v > 0.0) || !std::isfinite(v))
    out.push_back({ConfigError::NonPositiveParameter, key, "must be positive"});
}

void check_bath(std::vector<Violation>& out, const BathSpec& b, const std::string& name) {
  require_positive(out, b.temperature, name + ".T");
  require_positive(out, b.kappa, name + ".kappa");
  require_positive(out, b.ohmic_exponent, name + ".p");
  if (b.cutoff != 0.0) require_positive(out, b.cutoff, name + ".cutoff");
  if (b.filter) {
    require_positive(out, b.filter->center, name + ".filter.center");
    require_positive(out, b.filter->strength, name + ".filter.strength");
  }
  // Windows must be disjoint with positive width.
  auto w = b.coupling_windows;
  std::sort(w.begin(), w.end(), [](const Window& a, const Window& b) { return a.lo < b.lo; });
  for (size_t i = 0; i < w.size(); ++i) {
    if (!(w[i].hi > w[i].lo) || w[i].lo < 0.0)
      out.push_back({ConfigError::WindowsInvalid, name + ".window",
                     "window must have positive width and nonnegative bounds"});
    if (i > 0 && w[i].lo < w[i - 1].hi)
      out.push_back({ConfigError::WindowsInvalid, name + ".window", "windows overlap"});
  }
}

}  // namespace

ValidationResult validate(SystemConfig c) {
  std::vector<Violation> out;

  require_positive(out, c.omega_h, "omega_h");
  require_positive(out, c.omega_c, "omega_c");
  if (c.g < 0.0 || !std::isfinite(c.g))
    out.push_back({ConfigError::NonPositiveParameter, "g", "must be nonnegative"});

  // Truncations per medium.
  switch (c.medium) {
    case Medium::TLS:
      c.truncation_A = 2;
      c.truncation_B = 2;
      break;
    case Medium::TLOS:
      c.truncation_A = 2;
      if (c.truncation_B < 2)
        out.push_back({ConfigError::TruncationTooSmall, "truncation_B", "TLOS needs >= 2"});
      break;
    case Medium::OMS:
      if (c.truncation_A < 2)
        out.push_back({ConfigError::TruncationTooSmall, "truncation_A", "OMS needs >= 2"});
      if (c.truncation_B < 2)
        out.push_back({ConfigError::TruncationTooSmall, "truncation_B", "OMS needs >= 2"});
      break;
  }

  c.work.role = BathRole::Work;
  c.hot.role = BathRole::Hot;
  c.cold.role = BathRole::Cold;
  check_bath(out, c.work, "bath.work");
  check_bath(out, c.hot, "bath.hot");
  check_bath(out, c.cold, "bath.cold");

  const double Tw = c.work.temperature, Th = c.hot.temperature, Tc = c.cold.temperature;
  if (!(Tw > Th && Th > Tc))
    out.push_back({ConfigError::TemperatureOrderViolation, "bath.*.T",
                   "requires T_w > T_h > T_c (strict)"});

  if (c.leak) {
    if (c.topology != Topology::Standard)
      out.push_back({ConfigError::LeakInvalid, "leak", "leak requires standard topology"});
    if (c.gating != GatingScheme::TwoQutrit)
      out.push_back({ConfigError::LeakInvalid, "leak", "leak requires two_qutrit gating"});
    if (!(c.leak->strength > 0.0))
      out.push_back({ConfigError::LeakInvalid, "leak.strength", "must be positive"});
  }
  if (c.topology == Topology::Swapped && c.gating == GatingScheme::SingleCycle)
    out.push_back({ConfigError::WindowsInvalid, "gating",
                   "single_cycle gating is defined for the standard topology"});

  if (!out.empty()) {
    ValidationResult r;
    r.violations = std::move(out);
    return r;
  }

  // Fill defaults, then normalize.
  for (BathRole r : {BathRole::Work, BathRole::Hot, BathRole::Cold}) {
    BathSpec& b = c.bath(r);
    if (b.cutoff == 0.0) b.cutoff = 1000.0 * c.omega_h;
  }
  if (c.topology == Topology::Standard && c.omega_h != 1.0) {
    const double u = c.omega_h;
    c.omega_h = 1.0;
    c.omega_c /= u;
    c.g /= u;
    for (BathRole r : {BathRole::Work, BathRole::Hot, BathRole::Cold}) {
      BathSpec& b = c.bath(r);
      b.temperature /= u;
      b.cutoff /= u;
      if (b.filter) b.filter->center /= u;
      for (Window& w : b.coupling_windows) {
        w.lo /= u;
        w.hi /= u;
      }
    }
  }
  return ValidationResult::success(std::move(c));
}

ValidatedConfig validate_or_throw(SystemConfig c) {
  ValidationResult r = validate(std::move(c));
  if (!r.ok()) throw ConfigException(std::move(r.violations));
  return *std::move(r.config);
}

}  // namespace qar
