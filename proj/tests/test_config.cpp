#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qar/config.hpp"

using namespace qar;

namespace {

SystemConfig fig4_tls() {
  SystemConfig c;
  c.medium = Medium::TLS;
  c.omega_h = 1.0;
  c.omega_c = 0.1;
  c.g = 0.005;
  c.work.temperature = 0.75;
  c.hot.temperature = 0.50;
  c.cold.temperature = 0.125;
  c.work.kappa = c.hot.kappa = c.cold.kappa = 0.005;
  return c;
}

bool has_violation(const ValidationResult& r, ConfigError e) {
  for (const auto& v : r.violations)
    if (v.code == e) return true;
  return false;
}

}  // namespace

TEST_CASE("fig4 TLS parameters validate") {
  const ValidationResult r = validate(fig4_tls());
  REQUIRE(r.ok());
  CHECK(r.config->get().work.cutoff == doctest::Approx(1000.0));  // default fill
  CHECK(r.config->get().truncation_A == 2);
  CHECK(r.config->get().truncation_B == 2);
}

TEST_CASE("equal work and hot temperatures are rejected") {
  SystemConfig c = fig4_tls();
  c.work.temperature = c.hot.temperature;
  const ValidationResult r = validate(c);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, ConfigError::TemperatureOrderViolation));
}

TEST_CASE("OMS with truncation_B = 1 is rejected") {
  SystemConfig c = fig4_tls();
  c.medium = Medium::OMS;
  c.truncation_A = 10;
  c.truncation_B = 1;
  const ValidationResult r = validate(c);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, ConfigError::TruncationTooSmall));
}

TEST_CASE("nonpositive parameters are rejected with the offending key") {
  SystemConfig c = fig4_tls();
  c.cold.kappa = 0.0;
  const ValidationResult r = validate(c);
  REQUIRE_FALSE(r.ok());
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].key == "bath.cold.kappa");
}

TEST_CASE("standard-topology configs are normalized to omega_h units") {
  SystemConfig c = fig4_tls();
  c.omega_h = 2.0;
  c.omega_c = 0.2;
  c.g = 0.01;
  c.work.temperature = 1.5;
  c.hot.temperature = 1.0;
  c.cold.temperature = 0.25;
  const ValidationResult r = validate(c);
  REQUIRE(r.ok());
  const SystemConfig& n = r.config->get();
  CHECK(n.omega_h == doctest::Approx(1.0));
  CHECK(n.omega_c == doctest::Approx(0.1));
  CHECK(n.g == doctest::Approx(0.005));
  CHECK(n.work.temperature == doctest::Approx(0.75));
}

TEST_CASE("validate is idempotent") {
  SystemConfig c = fig4_tls();
  c.omega_h = 3.0;  // force a nontrivial rescale
  c.omega_c = 0.3;
  c.work.temperature = 2.25;
  c.hot.temperature = 1.5;
  c.cold.temperature = 0.375;
  const ValidationResult once = validate(c);
  REQUIRE(once.ok());
  const ValidationResult twice = validate(once.config->get());
  REQUIRE(twice.ok());
  const SystemConfig& a = once.config->get();
  const SystemConfig& b = twice.config->get();
  CHECK(a.omega_c == b.omega_c);
  CHECK(a.g == b.g);
  CHECK(a.work.temperature == b.work.temperature);
  CHECK(a.work.cutoff == b.work.cutoff);
}

TEST_CASE("leak requires standard topology") {
  SystemConfig c = fig4_tls();
  c.topology = Topology::Swapped;
  c.leak = LeakSpec{LeakTarget::WorkTransition, 0.05};
  const ValidationResult r = validate(c);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, ConfigError::LeakInvalid));
}

TEST_CASE("overlapping explicit windows are rejected") {
  SystemConfig c = fig4_tls();
  c.hot.coupling_windows = {{0.8, 1.2}, {1.1, 1.5}};
  const ValidationResult r = validate(c);
  REQUIRE_FALSE(r.ok());
  CHECK(has_violation(r, ConfigError::WindowsInvalid));
}

TEST_CASE("validate_or_throw raises ConfigException with details") {
  SystemConfig c = fig4_tls();
  c.work.temperature = 0.1;  // below hot
  CHECK_THROWS_AS((void)validate_or_throw(c), ConfigException);
}
