#include "qar/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qar {

const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': not a number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': not an integer: '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::istringstream is(v);
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key or value");
    if (kv.count(key)) throw ParseError("duplicate config key '" + key + "'");
    kv[key] = val;
  }
  return kv;
}

namespace {

void parse_bath(const std::map<std::string, std::string>& kv, const std::string& name,
                BathSpec& b, std::map<std::string, std::string>& used) {
  const std::string pre = "bath." + name + ".";
  const auto get = [&](const std::string& sub) -> const std::string* {
    auto it = kv.find(pre + sub);
    if (it == kv.end()) return nullptr;
    used[it->first] = it->second;
    return &it->second;
  };
  if (const auto* v = get("T")) b.temperature = to_double(pre + "T", *v);
  if (const auto* v = get("kappa")) b.kappa = to_double(pre + "kappa", *v);
  if (const auto* v = get("p")) b.ohmic_exponent = to_double(pre + "p", *v);
  if (const auto* v = get("cutoff")) b.cutoff = to_double(pre + "cutoff", *v);
  const auto* fc = get("filter.center");
  const auto* fs = get("filter.strength");
  const auto* fl = get("filter.lamb_shift");
  if (fc || fs) {
    FilterSpec f;
    if (fc) f.center = to_double(pre + "filter.center", *fc);
    if (fs) f.strength = to_double(pre + "filter.strength", *fs);
    if (fl) {
      if (*fl == "zero")
        f.lamb_shift = LambShiftMode::Zero;
      else if (*fl == "numeric_pv")
        f.lamb_shift = LambShiftMode::NumericPV;
      else
        throw ParseError(pre + "filter.lamb_shift: expected zero|numeric_pv");
    }
    b.filter = f;
  }
  if (const auto* v = get("window")) {
    // "lo hi; lo hi; ..."
    std::istringstream is(*v);
    std::string seg;
    while (std::getline(is, seg, ';')) {
      std::istringstream ss(seg);
      Window w;
      if (!(ss >> w.lo >> w.hi)) throw ParseError(pre + "window: expected 'lo hi'");
      b.coupling_windows.push_back(w);
    }
  }
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  const auto kv = parse_key_values(text);
  std::map<std::string, std::string> used;
  ParsedConfig out;
  SystemConfig& c = out.system;

  const auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    used[it->first] = it->second;
    return &it->second;
  };

  if (const auto* v = get("medium")) {
    if (*v == "TLS")
      c.medium = Medium::TLS;
    else if (*v == "TLOS")
      c.medium = Medium::TLOS;
    else if (*v == "OMS")
      c.medium = Medium::OMS;
    else
      throw ParseError("medium: expected TLS|TLOS|OMS");
  }
  if (const auto* v = get("topology")) {
    if (*v == "standard")
      c.topology = Topology::Standard;
    else if (*v == "swapped")
      c.topology = Topology::Swapped;
    else
      throw ParseError("topology: expected standard|swapped");
  }
  if (const auto* v = get("gating")) {
    if (*v == "two_qutrit")
      c.gating = GatingScheme::TwoQutrit;
    else if (*v == "single_cycle")
      c.gating = GatingScheme::SingleCycle;
    else
      throw ParseError("gating: expected two_qutrit|single_cycle");
  }
  if (const auto* v = get("omega_h")) c.omega_h = to_double("omega_h", *v);
  if (const auto* v = get("omega_c")) c.omega_c = to_double("omega_c", *v);
  if (const auto* v = get("g")) c.g = to_double("g", *v);
  if (const auto* v = get("truncation_A")) c.truncation_A = to_int("truncation_A", *v);
  if (const auto* v = get("truncation_B")) c.truncation_B = to_int("truncation_B", *v);
  if (const auto* v = get("scale_GHz")) c.scale_ghz = to_double("scale_GHz", *v);
  // Medium-appropriate truncation defaults when not given explicitly.
  if (!kv.count("truncation_B")) {
    if (c.medium == Medium::TLOS) c.truncation_B = 12;
    if (c.medium == Medium::OMS) c.truncation_B = 10;
  }
  if (!kv.count("truncation_A") && c.medium == Medium::OMS) c.truncation_A = 10;

  parse_bath(kv, "work", c.work, used);
  parse_bath(kv, "hot", c.hot, used);
  parse_bath(kv, "cold", c.cold, used);

  if (const auto* v = get("leak.target")) {
    LeakSpec leak;
    if (*v == "work_transition")
      leak.target = LeakTarget::WorkTransition;
    else if (*v == "hot_transition")
      leak.target = LeakTarget::HotTransition;
    else
      throw ParseError("leak.target: expected work_transition|hot_transition");
    if (const auto* s = get("leak.strength")) leak.strength = to_double("leak.strength", *s);
    c.leak = leak;
  }

  if (const auto* v = get("sweep.param")) {
    out.has_sweep = true;
    out.sweep.base = c;
    if (*v == "omega_c")
      out.sweep.param = SweepParam::OmegaC;
    else if (*v == "g")
      out.sweep.param = SweepParam::Coupling;
    else if (*v == "p")
      out.sweep.param = SweepParam::OhmicExponent;
    else if (*v == "T_w")
      out.sweep.param = SweepParam::TempWork;
    else if (*v == "T_h")
      out.sweep.param = SweepParam::TempHot;
    else if (*v == "T_c")
      out.sweep.param = SweepParam::TempCold;
    else
      throw ParseError("sweep.param: expected omega_c|g|p|T_w|T_h|T_c");
    if (const auto* x = get("sweep.min")) out.sweep.grid.lo = to_double("sweep.min", *x);
    if (const auto* x = get("sweep.max")) out.sweep.grid.hi = to_double("sweep.max", *x);
    if (const auto* x = get("sweep.count")) out.sweep.grid.count = to_int("sweep.count", *x);
    if (const auto* x = get("sweep.spacing")) {
      if (*x == "log")
        out.sweep.grid.log_spacing = true;
      else if (*x != "linear")
        throw ParseError("sweep.spacing: expected linear|log");
    }
    if (const auto* x = get("sweep.points"))
      out.sweep.grid.explicit_points = to_list("sweep.points", *x);
    if (const auto* x = get("sweep.correlations"))
      out.sweep.correlations = (*x == "true" || *x == "1");
  }

  if (const auto* v = get("maxpower.lo")) {
    out.has_maxpower = true;
    out.maxpower_lo = to_double("maxpower.lo", *v);
    if (const auto* x = get("maxpower.hi")) out.maxpower_hi = to_double("maxpower.hi", *x);
  }

  out.sampling.base = c;
  if (const auto* v = get("sample.count")) out.sampling.count = to_int("sample.count", *v);
  if (const auto* v = get("sample.seed"))
    out.sampling.seed = std::stoull(*v);
  if (const auto* v = get("sample.tail_threshold"))
    out.sampling.tail_threshold = to_double("sample.tail_threshold", *v);
  SamplingRanges& r = out.sampling.ranges;
  if (const auto* v = get("sample.T_c_lo")) r.t_c_lo = to_double("sample.T_c_lo", *v);
  if (const auto* v = get("sample.T_c_hi")) r.t_c_hi = to_double("sample.T_c_hi", *v);
  if (const auto* v = get("sample.T_h_hi")) r.t_h_hi = to_double("sample.T_h_hi", *v);
  if (const auto* v = get("sample.T_w_hi")) r.t_w_hi = to_double("sample.T_w_hi", *v);
  if (const auto* v = get("sample.kappa_lo")) r.kappa_lo = to_double("sample.kappa_lo", *v);
  if (const auto* v = get("sample.kappa_hi")) r.kappa_hi = to_double("sample.kappa_hi", *v);
  if (const auto* v = get("sample.g_lo")) r.g_lo = to_double("sample.g_lo", *v);
  if (const auto* v = get("sample.g_hi")) r.g_hi = to_double("sample.g_hi", *v);

  if (const auto* v = get("leakstudy.g")) out.leak_g = to_list("leakstudy.g", *v);
  if (const auto* v = get("swapped.g")) out.swapped_g = to_list("swapped.g", *v);

  for (const auto& [key, val] : kv)
    if (!used.count(key)) throw ParseError("unknown config key '" + key + "'");
  return out;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

std::string canonical_bytes(const SystemConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["medium"] = to_string(cfg.medium);
  kv["topology"] = to_string(cfg.topology);
  kv["gating"] = to_string(cfg.gating);
  kv["omega_h"] = format_double(cfg.omega_h);
  kv["omega_c"] = format_double(cfg.omega_c);
  kv["g"] = format_double(cfg.g);
  kv["truncation_A"] = std::to_string(cfg.truncation_A);
  kv["truncation_B"] = std::to_string(cfg.truncation_B);
  for (BathRole role : {BathRole::Work, BathRole::Hot, BathRole::Cold}) {
    const BathSpec& b = cfg.bath(role);
    const std::string pre = "bath." + to_string(role) + ".";
    kv[pre + "T"] = format_double(b.temperature);
    kv[pre + "kappa"] = format_double(b.kappa);
    kv[pre + "p"] = format_double(b.ohmic_exponent);
    kv[pre + "cutoff"] = format_double(b.cutoff);
    if (b.filter) {
      kv[pre + "filter.center"] = format_double(b.filter->center);
      kv[pre + "filter.strength"] = format_double(b.filter->strength);
      kv[pre + "filter.lamb_shift"] =
          b.filter->lamb_shift == LambShiftMode::Zero ? "zero" : "numeric_pv";
    }
    if (!b.coupling_windows.empty()) {
      std::string s;
      for (const Window& w : b.coupling_windows) {
        if (!s.empty()) s += ";";
        s += format_double(w.lo) + " " + format_double(w.hi);
      }
      kv[pre + "window"] = s;
    }
  }
  if (cfg.leak) {
    kv["leak.target"] = to_string(cfg.leak->target);
    kv["leak.strength"] = format_double(cfg.leak->strength);
  }
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const SystemConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                (unsigned long long)fnv1a64(canonical_bytes(cfg)));
  return buf;
}

namespace {

void report_columns(std::string& s, const SteadyStateReport& r) {
  s += format_double(r.j_w) + "," + format_double(r.j_h) + "," + format_double(r.j_c) + ",";
  s += format_double(r.sigma) + ",";
  s += (r.eps_defined ? format_double(r.eps) : "na") + ",";
  s += (r.eps_defined ? format_double(r.eps / r.eps_carnot) : "na") + ",";
  s += format_double(r.first_law_residual) + "," + format_double(r.solve_residual) + ",";
  s += format_double(r.trace_dev) + "," + format_double(r.min_eigenvalue) + ",";
  s += std::string(r.flags.cooling ? "1" : "0") + ",";
  s += std::string(r.flags.degenerate_nullspace ? "1" : "0") + ",";
  s += std::string(r.flags.truncation_warning ? "1" : "0") + ",";
  s += std::string(r.flags.weak_coupling_valid ? "1" : "0") + ",";
  s += std::string(r.flags.population_path ? "1" : "0");
}

constexpr const char* kReportHeader =
    "J_w,J_h,J_c,sigma,eps,eps_over_carnot,first_law_residual,solve_residual,trace_dev,"
    "min_eigenvalue,cooling,degenerate,truncation_warning,weak_coupling_valid,"
    "population_path";

}  // namespace

std::string sweep_rows_csv(const StudyResult& result, const SweepSpec& spec) {
  std::string s = "index," + to_string(spec.param) + ",config_hash,";
  s += kReportHeader;
  const bool corr = spec.correlations;
  if (corr) s += ",S_A,S_B,S_AB,I_total,I_classical,D,ppt_min_eig,measured_party";
  s += ",error\n";
  for (const StudyRow& r : result.rows) {
    s += std::to_string(r.index) + "," + format_double(r.value) + ",";
    if (!r.ok) {
      for (int i = 0; i < 16 + (corr ? 8 : 0); ++i) s += ",";
      s += r.error + "\n";
      continue;
    }
    SystemConfig c = spec.base;
    switch (spec.param) {
      case SweepParam::OmegaC: c.omega_c = r.value; break;
      case SweepParam::Coupling: c.g = r.value; break;
      case SweepParam::OhmicExponent:
        c.work.ohmic_exponent = c.hot.ohmic_exponent = c.cold.ohmic_exponent = r.value;
        break;
      case SweepParam::TempWork: c.work.temperature = r.value; break;
      case SweepParam::TempHot: c.hot.temperature = r.value; break;
      case SweepParam::TempCold: c.cold.temperature = r.value; break;
    }
    s += config_hash(c) + ",";
    report_columns(s, r.report);
    if (corr) {
      s += ",";
      if (r.corr) {
        s += format_double(r.corr->s_a) + "," + format_double(r.corr->s_b) + ",";
        s += format_double(r.corr->s_ab) + "," + format_double(r.corr->total) + ",";
        if (r.corr->discord_defined) {
          s += format_double(r.corr->classical) + "," + format_double(r.corr->discord) + "," +
               format_double(r.corr->ppt_min_eigenvalue) + ",";
          s += r.corr->measured_party == MeasuredParty::A ? "A" : "B";
        } else {
          s += "na,na,na,na";
        }
      } else {
        s += "na,na,na,na,na,na,na,na";
      }
    }
    s += ",\n";
  }
  return s;
}

std::string campaign_rows_csv(const StudyResult& result) {
  std::string s =
      "index,T_w,T_h,T_c,kappa_w,kappa_h,kappa_c,g,omega_c_star,J_c_star,eps_star,"
      "eps_star_over_carnot,sigma,first_law_residual,laws_ok,error\n";
  for (const StudyRow& r : result.rows) {
    s += std::to_string(r.index) + ",";
    s += format_double(r.t_w) + "," + format_double(r.t_h) + "," + format_double(r.t_c) + ",";
    s += format_double(r.kappa_w) + "," + format_double(r.kappa_h) + "," +
         format_double(r.kappa_c) + ",";
    s += format_double(r.g) + ",";
    if (r.ok) {
      s += format_double(r.omega_star) + "," + format_double(r.j_c_star) + ",";
      s += format_double(r.eps_star) + "," + format_double(r.eps_ratio) + ",";
      s += format_double(r.report.sigma) + "," + format_double(r.report.first_law_residual) +
           ",";
      s += std::string(r.laws_ok ? "1" : "0") + ",\n";
    } else {
      s += ",,,,,,0," + r.error + "\n";
    }
  }
  return s;
}

std::string histogram_csv(const Histogram& hist) {
  std::string s = "bin_lo,bin_hi,count\n";
  for (size_t i = 0; i < hist.counts.size(); ++i)
    s += format_double(hist.edges[i]) + "," + format_double(hist.edges[i + 1]) + "," +
         std::to_string(hist.counts[i]) + "\n";
  return s;
}

std::string leak_curves_csv(const LeakCurves& curves) {
  std::string s = "g,omega_c,J_c,J_c_over_J0,eps_over_carnot,cooling\n";
  for (const LeakCurvePoint& p : curves.points) {
    s += format_double(p.g) + "," + format_double(p.omega_c) + "," + format_double(p.j_c) +
         "," + format_double(p.j_c_norm) + "," + format_double(p.eps_ratio) + "," +
         (p.cooling ? "1" : "0") + "\n";
  }
  return s;
}

std::string swapped_rows_csv(const std::vector<SwappedBoundRow>& rows) {
  std::string s = "g,omega_star,J_c_star,eps_star,eps_star_over_carnot,within_bound\n";
  for (const SwappedBoundRow& r : rows) {
    s += format_double(r.g) + "," + format_double(r.omega_star) + "," +
         format_double(r.j_c_star) + "," + format_double(r.eps_star) + "," +
         format_double(r.eps_ratio) + "," + (r.within_bound ? "1" : "0") + "\n";
  }
  return s;
}

std::string ledger_csv(const LiouvillianSet& liou) {
  std::string s = "bath,label,frequency,weight,rate,parasitic\n";
  for (const Term& t : liou.terms()) {
    s += to_string(t.bath) + "," + to_string(t.label) + "," + format_double(t.frequency) +
         "," + format_double(t.weight) + "," + format_double(t.rate) + "," +
         (t.parasitic ? "1" : "0") + "\n";
  }
  return s;
}

std::string report_json(const SystemConfig& cfg, const SteadyStateReport& rep) {
  json j;
  j["config_hash"] = config_hash(cfg);
  j["medium"] = to_string(cfg.medium);
  j["topology"] = to_string(cfg.topology);
  j["J_w"] = rep.j_w;
  j["J_h"] = rep.j_h;
  j["J_c"] = rep.j_c;
  j["sigma"] = rep.sigma;
  if (rep.eps_defined) {
    j["eps"] = rep.eps;
    j["eps_over_carnot"] = rep.eps / rep.eps_carnot;
  } else {
    j["eps"] = nullptr;
    j["eps_over_carnot"] = nullptr;
  }
  j["eps_carnot"] = rep.eps_carnot;
  j["first_law_residual"] = rep.first_law_residual;
  j["solve_residual"] = rep.solve_residual;
  j["trace_dev"] = rep.trace_dev;
  j["min_eigenvalue"] = rep.min_eigenvalue;
  j["weak_coupling_ratio"] = rep.weak_coupling_ratio;
  j["flags"] = {{"cooling", rep.flags.cooling},
                {"degenerate_nullspace", rep.flags.degenerate_nullspace},
                {"truncation_warning", rep.flags.truncation_warning},
                {"weak_coupling_valid", rep.flags.weak_coupling_valid},
                {"population_path", rep.flags.population_path}};
  if (!rep.degeneracy_note.empty()) j["degeneracy_note"] = rep.degeneracy_note;
  if (cfg.scale_ghz > 0.0) j["scale_GHz"] = cfg.scale_ghz;
  std::vector<double> pops;
  for (int i = 0; i < rep.rho.rows(); ++i) pops.push_back(rep.rho(i, i).real());
  j["populations"] = pops;
  return j.dump(2) + "\n";
}

std::string campaign_summary_json(const StudyResult& result, const SamplingSpec& spec) {
  json j;
  j["samples"] = result.summary.rows;
  j["failures"] = result.summary.failures;
  j["seed"] = spec.seed;
  j["tail_threshold"] = spec.tail_threshold;
  j["above_half"] = result.summary.above_half;
  j["above_one"] = result.summary.above_one;
  j["max_eps_ratio"] = result.summary.max_eps_ratio;
  j["fit_exponent"] = result.summary.fit_exponent;
  j["fit_points"] = result.summary.fit_points;
  j["laws_ok_all"] = result.summary.laws_ok_all;
  return j.dump(2) + "\n";
}

std::string manifest_json(const RunManifest& m) {
  json j;
  j["tool_version"] = m.tool_version;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["started_utc"] = m.started_utc;
  j["finished_utc"] = m.finished_utc;
  j["rows"] = m.rows;
  j["failures"] = m.failures;
  j["truncation_warning"] = m.truncation_warning;
  j["weak_coupling_warning"] = m.weak_coupling_warning;
  j["tolerances"] = m.tolerances;
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j.dump(2) + "\n";
}

void write_output_file(const std::string& dir, const std::string& name,
                       const std::string& content, bool force) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path path = fs::path(dir) / name;
  if (!force && fs::exists(path))
    throw std::runtime_error("refusing to overwrite " + path.string() +
                             " (pass --force to allow)");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

}  // namespace qar
