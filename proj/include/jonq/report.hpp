#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jonq/mu.hpp"
#include "jonq/parser.hpp"

namespace jonq {

enum ExitCode : int { kExitOk = 0, kExitParse = 2, kExitDomain = 3, kExitMismatch = 4 };

struct ReportOptions {
  MuMethod method = MuMethod::Both;
  OracleOptions oracle;
  bool timings = false;
};

struct WitnessDegrees {
  std::optional<int> delta, omega, p_f, s_f, t_f, p;
};

/// Everything computed for one input map. Fields past `error` are filled as
/// far as the computation got.
struct Report {
  MapSource input;
  int exit_code = kExitOk;
  std::string status = "ok";  // ok | parse_error | domain_error | oracle_error | mismatch
  std::optional<std::string> error;
  std::optional<std::size_t> error_position;

  std::optional<MapSource> canonical;
  std::optional<std::string> subgroup;
  std::optional<int> base_order;
  std::optional<int> plane_degree;
  std::optional<std::string> trace, det, discriminant;
  std::optional<std::string> bb;
  std::optional<bool> bb_is_constant;
  std::optional<std::string> case_tag;
  WitnessDegrees witnesses;
  std::optional<int> mu_formula;
  std::optional<int> mu_oracle;
  std::vector<int> degree_sequence;
  bool consistent = true;
  std::map<std::string, double> timings_ms;

  /// mu by the best available route (oracle if run, else formula).
  std::optional<int> mu() const { return mu_oracle ? mu_oracle : mu_formula; }
};

Report make_report(const MapSource& src, const ReportOptions& opts = {});

nlohmann::ordered_json to_json(const Report& r, bool with_timings = false);
std::string to_text(const Report& r);

struct BatchSummary {
  std::size_t total = 0;
  std::size_t ok = 0;
  std::size_t errors = 0;
  std::size_t mismatches = 0;
  std::map<std::string, std::size_t> cases;
};

struct BatchResult {
  std::vector<Report> reports;
  BatchSummary summary;
};

struct BatchEntry {
  MapSource source;
  /// Set when the entry itself is malformed (not an object, missing "fiber").
  std::optional<std::string> invalid;
};

/// A JSON array of {"fiber", "base"?, "var"?} objects, or one map per line
/// ("FIBER" or "FIBER ; BASE", blank lines and '#' comments skipped).
std::vector<BatchEntry> read_batch(std::istream& in);
std::vector<BatchEntry> read_batch_text(const std::string& text);

/// Reports in input order. `jobs` > 1 evaluates entries on that many threads.
BatchResult run_batch(const std::vector<BatchEntry>& entries, const ReportOptions& opts = {}, int jobs = 1);

nlohmann::ordered_json to_json(const BatchSummary& s);
nlohmann::ordered_json to_json(const BatchResult& b, bool with_timings = false);

}  // namespace jonq
