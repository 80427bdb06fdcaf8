#ifndef QAR_IO_HPP
#define QAR_IO_HPP

#include <cstdint>
#include <map>
#include <string>

#include "qar/studies.hpp"

namespace qar {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat key/value config text with dotted sections: `bath.cold.T = 0.125`,
// `#` comments, one pair per line. Keys are documented in the README.
std::map<std::string, std::string> parse_key_values(const std::string& text);

// System + study settings parsed from one config file.
struct ParsedConfig {
  SystemConfig system;
  // optional study sections, left at defaults when absent
  SweepSpec sweep;
  bool has_sweep = false;
  SamplingSpec sampling;
  double maxpower_lo = 0.0, maxpower_hi = 0.0;
  bool has_maxpower = false;
  std::vector<double> leak_g;
  std::vector<double> swapped_g;
};

ParsedConfig parse_config_text(const std::string& text);
ParsedConfig load_config_file(const std::string& path);

// Canonical serialization of a system config: sorted key=value lines with
// shortest-round-trip floats. Basis of the config hash.
std::string canonical_bytes(const SystemConfig& cfg);
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const SystemConfig& cfg);  // 16 hex digits

// Locale-independent shortest-round-trip float formatting.
std::string format_double(double v);

// Fixed-order CSV serializations (headers are pinned by golden tests).
std::string sweep_rows_csv(const StudyResult& result, const SweepSpec& spec);
std::string campaign_rows_csv(const StudyResult& result);
std::string histogram_csv(const Histogram& hist);
std::string leak_curves_csv(const LeakCurves& curves);
std::string swapped_rows_csv(const std::vector<SwappedBoundRow>& rows);
std::string ledger_csv(const LiouvillianSet& liou);

std::string report_json(const SystemConfig& cfg, const SteadyStateReport& rep);
std::string campaign_summary_json(const StudyResult& result, const SamplingSpec& spec);

struct RunManifest {
  std::string tool_version;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string started_utc, finished_utc;
  int rows = 0, failures = 0;
  bool truncation_warning = false;
  bool weak_coupling_warning = false;
  std::map<std::string, double> tolerances;
  std::string notes;
};

std::string manifest_json(const RunManifest& m);

// Writes `content` under dir/name; creates dir. Refuses to overwrite an
// existing file unless force is set.
void write_output_file(const std::string& dir, const std::string& name,
                       const std::string& content, bool force);

extern const char* kToolVersion;

}  // namespace qar

#endif
