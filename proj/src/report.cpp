#include "jonq/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iterator>
#include <sstream>
#include <thread>

#include "jonq/errors.hpp"

namespace jonq {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json source_json(const MapSource& s) {
  return Json{{"fiber", s.fiber_matrix_text}, {"base", opt(s.base_matrix_text)}, {"var", s.variable}};
}

class Stopwatch {
 public:
  Stopwatch(Report& r, const char* name, bool on)
      : r_(r), name_(name), on_(on), t0_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    if (!on_) return;
    r_.timings_ms[name_] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  Report& r_;
  const char* name_;
  bool on_;
  std::chrono::steady_clock::time_point t0_;
};

void fail(Report& r, int code, const std::string& status, const std::string& msg) {
  r.exit_code = code;
  r.status = status;
  r.error = msg;
}

void fill_witnesses(Report& r, const Witnesses& w) {
  auto deg = [](const std::optional<UniPoly>& p) { return p ? std::optional<int>(p->degree()) : std::nullopt; };
  r.witnesses.delta = deg(w.delta);
  r.witnesses.omega = deg(w.omega);
  r.witnesses.p_f = deg(w.p_f);
  r.witnesses.s_f = deg(w.s_f);
  r.witnesses.t_f = deg(w.t_f);
  r.witnesses.p = w.p;
}

void compute(Report& r, const ReportOptions& opts) {
  const std::string& var = r.input.variable;
  std::optional<JonquieresMap> parsed;
  {
    Stopwatch sw(r, "parse", opts.timings);
    parsed = parse_map(r.input);
  }
  const JonquieresMap& f = *parsed;
  r.canonical = serialize(f, var);
  r.plane_degree = plane_degree(f);
  r.subgroup = to_string(subgroup_recognize(f));

  if (f.in_j0()) {
    Stopwatch sw(r, "classify", opts.timings);
    const FiberMatrix& m = f.fiber();
    r.trace = to_string(m.trace(), var);
    r.det = to_string(m.det(), var);
    r.discriminant = to_string(m.discriminant(), var);
    RatFunc bb = baum_bott(f);
    r.bb = to_string(bb, var);
    r.bb_is_constant = bb.is_constant();
    ClassifyOptions co;
    co.oracle_fallback = false;
    co.oracle = opts.oracle;
    MuVerdict v = classify(f, co);
    r.case_tag = to_string(v.case_tag);
    fill_witnesses(r, v.witnesses);
    if (opts.method != MuMethod::Oracle) r.mu_formula = v.mu;
  } else {
    r.base_order = moebius_order(f.base());
    if (r.base_order && opts.method != MuMethod::Oracle) {
      Stopwatch sw(r, "formula", opts.timings);
      r.mu_formula = mu_non_base_wandering(f, MuMethod::Formula);
    }
  }

  // Without a closed form the oracle runs whatever the method.
  if (opts.method != MuMethod::Formula || !r.mu_formula) {
    Stopwatch sw(r, "oracle", opts.timings);
    try {
      OracleResult o = mu_oracle_detailed(f, opts.oracle);
      r.mu_oracle = o.mu;
      r.degree_sequence = o.sequence.degrees;
    } catch (const OracleError& e) {
      r.degree_sequence = e.sequence().degrees;
      throw;
    }
  } else {
    r.degree_sequence = degree_sequence(f, std::min(std::max(opts.oracle.kmax, 4), 8)).degrees;
  }

  if (r.mu_formula && r.mu_oracle && *r.mu_formula != *r.mu_oracle) {
    r.consistent = false;
    fail(r, kExitMismatch, "mismatch",
         "formula gives mu = " + std::to_string(*r.mu_formula) + " but the oracle gives " +
             std::to_string(*r.mu_oracle));
  }
}

}  // namespace

Report make_report(const MapSource& src, const ReportOptions& opts) {
  Report r;
  r.input = src;
  Stopwatch total(r, "total", opts.timings);
  try {
    compute(r, opts);
  } catch (const ParseError& e) {
    fail(r, kExitParse, "parse_error", e.what());
    r.error_position = e.position();
  } catch (const DomainError& e) {
    fail(r, kExitDomain, "domain_error", e.what());
  } catch (const OracleError& e) {
    fail(r, kExitDomain, "oracle_error", e.what());
  } catch (const ConsistencyError& e) {
    r.consistent = false;
    fail(r, kExitMismatch, "mismatch", e.what());
  }
  return r;
}

Json to_json(const Report& r, bool with_timings) {
  Json j;
  j["input"] = source_json(r.input);
  j["status"] = r.status;
  j["exit_code"] = r.exit_code;
  j["error"] = opt(r.error);
  j["error_position"] = opt(r.error_position);
  j["canonical"] = r.canonical ? source_json(*r.canonical) : Json(nullptr);
  j["subgroup"] = opt(r.subgroup);
  j["base_order"] = opt(r.base_order);
  j["plane_degree"] = opt(r.plane_degree);
  j["trace"] = opt(r.trace);
  j["det"] = opt(r.det);
  j["discriminant"] = opt(r.discriminant);
  j["bb"] = r.bb ? Json{{"value", *r.bb}, {"is_constant", *r.bb_is_constant}} : Json(nullptr);
  j["case_tag"] = opt(r.case_tag);
  const auto& w = r.witnesses;
  j["witnesses"] = Json{{"deg_delta", opt(w.delta)}, {"deg_omega", opt(w.omega)}, {"deg_p_f", opt(w.p_f)},
                        {"deg_s_f", opt(w.s_f)},     {"deg_t_f", opt(w.t_f)},     {"p", opt(w.p)}};
  j["mu_formula"] = opt(r.mu_formula);
  j["mu_oracle"] = opt(r.mu_oracle);
  j["degree_sequence"] = r.degree_sequence;
  j["consistent"] = r.consistent;
  if (with_timings) j["timings_ms"] = r.timings_ms;
  return j;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) { os << k << std::string(14 - k.size(), ' ') << v << '\n'; };
  row("input", r.input.fiber_matrix_text + (r.input.base_matrix_text ? "  base " + *r.input.base_matrix_text : ""));
  if (r.canonical) {
    row("canonical", r.canonical->fiber_matrix_text);
    row("base", r.canonical->base_matrix_text.value_or("identity"));
  }
  if (r.subgroup) row("subgroup", *r.subgroup);
  if (r.base_order) row("base order", std::to_string(*r.base_order));
  if (r.plane_degree) row("degree", std::to_string(*r.plane_degree));
  if (r.trace) row("trace", *r.trace);
  if (r.det) row("det", *r.det);
  if (r.discriminant) row("discriminant", *r.discriminant);
  if (r.bb) row("BB", *r.bb + (*r.bb_is_constant ? "  (constant)" : ""));
  if (r.case_tag) row("case", *r.case_tag);
  const auto& w = r.witnesses;
  std::string ws;
  auto add = [&](const char* name, const std::optional<int>& v) {
    if (v) ws += (ws.empty() ? "" : "  ") + std::string(name) + "=" + std::to_string(*v);
  };
  add("deg delta", w.delta);
  add("deg Omega", w.omega);
  add("deg P_f", w.p_f);
  add("deg S_f", w.s_f);
  add("deg T_f", w.t_f);
  add("p", w.p);
  if (!ws.empty()) row("witnesses", ws);
  if (r.mu_formula || r.mu_oracle) {
    std::string m;
    if (r.mu_formula) m += "formula " + std::to_string(*r.mu_formula);
    if (r.mu_oracle) m += (m.empty() ? "" : ", ") + std::string("oracle ") + std::to_string(*r.mu_oracle);
    if (r.mu_formula && r.mu_oracle) m += r.consistent ? "  (consistent)" : "  (MISMATCH)";
    row("mu", m);
  }
  if (!r.degree_sequence.empty()) {
    std::string d;
    for (int x : r.degree_sequence) d += (d.empty() ? "" : " ") + std::to_string(x);
    row("degrees", d);
  }
  if (r.error) row("error", *r.error);
  for (const auto& [k, v] : r.timings_ms) row("time " + k, std::to_string(v) + " ms");
  return os.str();
}

namespace {

std::vector<BatchEntry> entries_from_json(const Json& arr) {
  std::vector<BatchEntry> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& e = arr[i];
    BatchEntry be;
    auto invalid = [&](const std::string& why) {
      be.invalid = "entry " + std::to_string(i) + ": " + why;
      out.push_back(be);
    };
    if (e.is_string()) {
      be.source.fiber_matrix_text = e.get<std::string>();
      out.push_back(be);
      continue;
    }
    if (!e.is_object()) {
      invalid("expected an object or a string");
      continue;
    }
    if (!e.contains("fiber") || !e["fiber"].is_string()) {
      invalid("missing string field \"fiber\"");
      continue;
    }
    be.source.fiber_matrix_text = e["fiber"].get<std::string>();
    if (e.contains("base") && !e["base"].is_null()) {
      if (!e["base"].is_string()) {
        invalid("\"base\" must be a string or null");
        continue;
      }
      be.source.base_matrix_text = e["base"].get<std::string>();
    }
    if (e.contains("var")) {
      if (!e["var"].is_string()) {
        invalid("\"var\" must be a string");
        continue;
      }
      be.source.variable = e["var"].get<std::string>();
    }
    out.push_back(std::move(be));
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<BatchEntry> read_batch_text(const std::string& text) {
  // A JSON array whose elements are objects (or an empty array) is the JSON
  // form; "[[1,0],[0,1]]" alone is valid JSON but is a map line.
  Json j = Json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_array() &&
      std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_array(); })) {
    return entries_from_json(j);
  }
  std::vector<BatchEntry> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    BatchEntry e;
    auto semi = line.find(';');
    if (semi == std::string::npos) {
      e.source.fiber_matrix_text = line;
    } else {
      e.source.fiber_matrix_text = trim(line.substr(0, semi));
      e.source.base_matrix_text = trim(line.substr(semi + 1));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<BatchEntry> read_batch(std::istream& in) {
  return read_batch_text(std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

BatchResult run_batch(const std::vector<BatchEntry>& entries, const ReportOptions& opts, int jobs) {
  BatchResult out;
  out.reports.resize(entries.size());
  auto one = [&](std::size_t i) {
    const BatchEntry& e = entries[i];
    if (e.invalid) {
      Report r;
      r.input = e.source;
      fail(r, kExitParse, "parse_error", *e.invalid);
      out.reports[i] = std::move(r);
    } else {
      out.reports[i] = make_report(e.source, opts);
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), entries.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < entries.size(); ++i) one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  BatchSummary& s = out.summary;
  s.total = out.reports.size();
  for (const Report& r : out.reports) {
    if (r.status == "ok") {
      ++s.ok;
    } else if (r.status == "mismatch") {
      ++s.mismatches;
    } else {
      ++s.errors;
    }
    if (r.case_tag && r.status != "parse_error") ++s.cases[*r.case_tag];
  }
  return out;
}

Json to_json(const BatchSummary& s) {
  Json cases = Json::object();
  for (const auto& [k, v] : s.cases) cases[k] = v;
  return Json{{"total", s.total}, {"ok", s.ok}, {"errors", s.errors}, {"mismatches", s.mismatches}, {"cases", cases}};
}

Json to_json(const BatchResult& b, bool with_timings) {
  Json reports = Json::array();
  for (const Report& r : b.reports) reports.push_back(to_json(r, with_timings));
  return Json{{"reports", reports}, {"summary", to_json(b.summary)}};
}

}  // namespace jonq
