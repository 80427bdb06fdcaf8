#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

#include "qar/io.hpp"
#include "qar/oracle_tls.hpp"

namespace {

using namespace qar;

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string format = "json";
  int threads = 0;
  int truncation = 0;
  bool force = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", a.config_path, "config file (.cfg)");
  if (needs_config) opt->required();
  cmd->add_option("--out", a.out_dir, "output directory");
  cmd->add_option("--seed", a.seed, "override sample.seed")->each([&a](const std::string&) {
    a.seed_set = true;
  });
  cmd->add_option("--format", a.format, "steady output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", a.threads, "worker threads (0 = library default)");
  cmd->add_option("--truncation", a.truncation,
                  "override truncation_B (and truncation_A for OMS)");
  cmd->add_flag("--force", a.force, "overwrite existing outputs");
}

ParsedConfig load(const CommonArgs& a) {
  ParsedConfig p = load_config_file(a.config_path);
  if (a.truncation > 0) {
    p.system.truncation_B = a.truncation;
    if (p.system.medium == Medium::OMS) p.system.truncation_A = a.truncation;
    p.sweep.base = p.system;
    p.sampling.base = p.system;
  }
  if (a.seed_set) p.sampling.seed = a.seed;
  return p;
}

RunManifest make_manifest(const SystemConfig& cfg, std::uint64_t seed,
                          const std::string& started) {
  RunManifest m;
  m.tool_version = kToolVersion;
  m.config_hash = config_hash(cfg);
  m.seed = seed;
  m.started_utc = started;
  m.finished_utc = utc_now();
  m.tolerances = {{"first_law", 1e-10},
                  {"second_law", -1e-10},
                  {"trace", 1e-12},
                  {"psd", -1e-10},
                  {"maxpower_bracket", 1e-5}};
  return m;
}

int cmd_validate(const CommonArgs& a) {
  const ParsedConfig p = load(a);
  const ValidationResult r = validate(p.system);
  if (r.ok()) {
    std::cout << "OK " << config_hash(r.config->get()) << "\n";
    return 0;
  }
  for (const Violation& v : r.violations)
    std::cerr << to_string(v.code) << " " << v.key << ": " << v.detail << "\n";
  return 1;
}

int cmd_steady(const CommonArgs& a) {
  const ParsedConfig p = load(a);
  const std::string started = utc_now();
  const ValidatedConfig vc = validate_or_throw(p.system);
  const DressedSystem d = build_dressed(vc);
  const LiouvillianSet l = assemble(vc, d);
  const SteadyStateReport rep = solve_report(vc, l);
  if (a.format == "csv") {
    std::cout << "J_w,J_h,J_c,sigma,eps,cooling\n"
              << format_double(rep.j_w) << "," << format_double(rep.j_h) << ","
              << format_double(rep.j_c) << "," << format_double(rep.sigma) << ","
              << (rep.eps_defined ? format_double(rep.eps) : "na") << ","
              << (rep.flags.cooling ? 1 : 0) << "\n";
  } else {
    std::cout << report_json(vc.get(), rep);
  }
  if (!a.out_dir.empty()) {
    write_output_file(a.out_dir, "report.json", report_json(vc.get(), rep), a.force);
    write_output_file(a.out_dir, "ledger.csv", ledger_csv(l), a.force);
    RunManifest m = make_manifest(vc.get(), 0, started);
    m.rows = 1;
    m.truncation_warning = rep.flags.truncation_warning;
    m.weak_coupling_warning = !rep.flags.weak_coupling_valid;
    write_output_file(a.out_dir, "manifest.json", manifest_json(m), a.force);
  }
  return 0;
}

int cmd_sweep(const CommonArgs& a) {
  ParsedConfig p = load(a);
  if (!p.has_sweep) throw ParseError("config has no sweep.* section");
  const std::string started = utc_now();
  const StudyResult res = run_sweep(p.sweep, a.threads);
  const std::string rows = sweep_rows_csv(res, p.sweep);
  if (a.out_dir.empty()) {
    std::cout << rows;
  } else {
    write_output_file(a.out_dir, "rows.csv", rows, a.force);
    RunManifest m = make_manifest(p.sweep.base, 0, started);
    m.rows = res.summary.rows;
    m.failures = res.summary.failures;
    if (!res.summary.laws_ok_all) m.notes = "law violation in at least one row";
    write_output_file(a.out_dir, "manifest.json", manifest_json(m), a.force);
  }
  if (res.summary.failures > 0 && res.summary.failures == res.summary.rows) return 2;
  return 0;
}

int cmd_maxpower(const CommonArgs& a) {
  const ParsedConfig p = load(a);
  if (!p.has_maxpower) throw ParseError("config has no maxpower.* section");
  const std::string started = utc_now();
  const MaxPowerResult m = max_power_point(p.system, p.maxpower_lo, p.maxpower_hi);
  std::cout << "omega_star=" << format_double(m.omega_star)
            << " J_c_star=" << format_double(m.j_c_star)
            << " eps_star=" << format_double(m.eps_star)
            << " eps_star_over_carnot=" << format_double(m.eps_star / m.eps_carnot) << "\n";
  if (!a.out_dir.empty()) {
    std::string s = "omega_star,J_c_star,eps_star,eps_star_over_carnot\n";
    s += format_double(m.omega_star) + "," + format_double(m.j_c_star) + "," +
         format_double(m.eps_star) + "," + format_double(m.eps_star / m.eps_carnot) + "\n";
    write_output_file(a.out_dir, "rows.csv", s, a.force);
    RunManifest man = make_manifest(p.system, 0, started);
    man.rows = 1;
    write_output_file(a.out_dir, "manifest.json", manifest_json(man), a.force);
  }
  return 0;
}

int cmd_sample(const CommonArgs& a) {
  ParsedConfig p = load(a);
  const std::string started = utc_now();
  const StudyResult res = random_campaign(p.sampling, a.threads);
  const std::string rows = campaign_rows_csv(res);
  const std::string hist = histogram_csv(res.hist);
  const std::string summary = campaign_summary_json(res, p.sampling);
  if (a.out_dir.empty()) {
    std::cout << summary;
  } else {
    write_output_file(a.out_dir, "rows.csv", rows, a.force);
    write_output_file(a.out_dir, "hist.csv", hist, a.force);
    write_output_file(a.out_dir, "summary.json", summary, a.force);
    RunManifest m = make_manifest(p.system, p.sampling.seed, started);
    m.rows = res.summary.rows;
    m.failures = res.summary.failures;
    write_output_file(a.out_dir, "manifest.json", manifest_json(m), a.force);
  }
  return 0;
}

int cmd_leak(const CommonArgs& a) {
  ParsedConfig p = load(a);
  if (!p.system.leak) throw ParseError("config has no leak.target");
  if (p.leak_g.empty()) throw ParseError("config has no leakstudy.g list");
  const std::string started = utc_now();
  const LeakCurves curves = leak_curves(p.system, p.leak_g, 160, a.threads);
  std::cout << "g,gap\n";
  for (size_t i = 0; i < curves.g_values.size(); ++i)
    std::cout << format_double(curves.g_values[i]) << "," << format_double(curves.gaps[i])
              << "\n";
  if (!a.out_dir.empty()) {
    write_output_file(a.out_dir, "rows.csv", leak_curves_csv(curves), a.force);
    RunManifest m = make_manifest(p.system, 0, started);
    m.rows = int(curves.points.size());
    write_output_file(a.out_dir, "manifest.json", manifest_json(m), a.force);
  }
  return 0;
}

int cmd_swapped(const CommonArgs& a) {
  ParsedConfig p = load(a);
  if (p.swapped_g.empty()) throw ParseError("config has no swapped.g list");
  const std::string started = utc_now();
  const auto rows = swapped_bound_check(p.system, p.swapped_g);
  std::cout << swapped_rows_csv(rows);
  if (!a.out_dir.empty()) {
    write_output_file(a.out_dir, "rows.csv", swapped_rows_csv(rows), a.force);
    RunManifest m = make_manifest(p.system, 0, started);
    m.rows = int(rows.size());
    write_output_file(a.out_dir, "manifest.json", manifest_json(m), a.force);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-body quantum absorption refrigerator study engine"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* validate_cmd = app.add_subcommand("validate", "check a config file");
  auto* steady_cmd = app.add_subcommand("steady", "solve one steady state");
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep");
  auto* maxpower_cmd = app.add_subcommand("maxpower", "efficiency at maximum cooling power");
  auto* sample_cmd = app.add_subcommand("sample", "random sampling campaign");
  auto* leak_cmd = app.add_subcommand("leak", "heat-leak characteristic curves");
  auto* swapped_cmd = app.add_subcommand("swapped", "swapped-topology bound check");
  for (CLI::App* c : {validate_cmd, steady_cmd, sweep_cmd, maxpower_cmd, sample_cmd, leak_cmd,
                      swapped_cmd})
    add_common(c, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(args);
    if (steady_cmd->parsed()) return cmd_steady(args);
    if (sweep_cmd->parsed()) return cmd_sweep(args);
    if (maxpower_cmd->parsed()) return cmd_maxpower(args);
    if (sample_cmd->parsed()) return cmd_sample(args);
    if (leak_cmd->parsed()) return cmd_leak(args);
    if (swapped_cmd->parsed()) return cmd_swapped(args);
  } catch (const ConfigException& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
