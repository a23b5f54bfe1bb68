#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jonq/errors.hpp"
#include "jonq/ns_lattice.hpp"
#include "jonq/report.hpp"

using namespace jonq;

namespace {

struct MapArgs {
  std::string fiber;
  std::string base;
  std::string var = "y";
  MapSource source() const {
    MapSource s;
    s.fiber_matrix_text = fiber;
    if (!base.empty()) s.base_matrix_text = base;
    s.variable = var;
    return s;
  }
};

struct CommonArgs {
  int kmax = 24;
  std::string method = "both";
  bool json = false;
  bool timings = false;

  ReportOptions options() const {
    ReportOptions o;
    o.method = parse_mu_method(method);
    o.oracle.kmax = kmax;
    o.timings = timings;
    return o;
  }
};

void add_map_args(CLI::App* cmd, MapArgs& m) {
  cmd->add_option("map", m.fiber, "fiber matrix \"[[A,B],[C,D]]\"")->required();
  cmd->add_option("--base", m.base, "base action \"[[a,b],[c,d]]\" (rational constants)");
  cmd->add_option("--var", m.var, "name of the base variable")->capture_default_str();
}

void add_common(CLI::App* cmd, CommonArgs& c) {
  cmd->add_option("--kmax", c.kmax, "iterates examined by the oracle")->capture_default_str()->check(CLI::Range(4, 100000));
  cmd->add_option("--method", c.method, "formula, oracle or both")
      ->capture_default_str()
      ->check(CLI::IsMember({"formula", "oracle", "both"}));
  cmd->add_flag("--json", c.json, "machine-readable output");
  cmd->add_flag("--timings", c.timings, "include timings (output is then not byte-stable)");
}

void print_error(const Report& r) { std::cerr << "error: " << r.error.value_or(r.status) << '\n'; }

int cmd_classify(const MapArgs& m, const CommonArgs& c) {
  Report r = make_report(m.source(), c.options());
  if (c.json) {
    std::cout << to_json(r, c.timings).dump(2) << '\n';
  } else {
    std::cout << to_text(r);
    if (r.exit_code != kExitOk) print_error(r);
  }
  return r.exit_code;
}

int cmd_mu(const MapArgs& m, const CommonArgs& c) {
  Report r = make_report(m.source(), c.options());
  if (c.json) {
    nlohmann::ordered_json j{{"input", to_json(r)["input"]},
                             {"status", r.status},
                             {"case_tag", r.case_tag ? nlohmann::ordered_json(*r.case_tag) : nullptr},
                             {"mu", r.exit_code == kExitOk && r.mu() ? nlohmann::ordered_json(*r.mu()) : nullptr},
                             {"mu_formula", r.mu_formula ? nlohmann::ordered_json(*r.mu_formula) : nullptr},
                             {"mu_oracle", r.mu_oracle ? nlohmann::ordered_json(*r.mu_oracle) : nullptr},
                             {"consistent", r.consistent},
                             {"error", r.error ? nlohmann::ordered_json(*r.error) : nullptr}};
    if (c.timings) j["timings_ms"] = r.timings_ms;
    std::cout << j.dump(2) << '\n';
  } else if (r.exit_code == kExitOk && r.mu()) {
    std::cout << *r.mu() << '\n';
  } else {
    print_error(r);
  }
  return r.exit_code;
}

template <class Fn>
int guarded(bool json, Fn&& fn) {
  auto report = [&](int code, const std::string& status, const std::string& msg) {
    if (json) {
      std::cout << nlohmann::ordered_json{{"status", status}, {"error", msg}}.dump(2) << '\n';
    } else {
      std::cerr << "error: " << msg << '\n';
    }
    return code;
  };
  try {
    return fn();
  } catch (const ParseError& e) {
    return report(kExitParse, "parse_error", e.what());
  } catch (const DomainError& e) {
    return report(kExitDomain, "domain_error", e.what());
  } catch (const OracleError& e) {
    return report(kExitDomain, "oracle_error", e.what());
  } catch (const ConsistencyError& e) {
    return report(kExitMismatch, "mismatch", e.what());
  }
}

int cmd_iterate(const MapArgs& m, int k, bool json) {
  return guarded(json, [&] {
    JonquieresMap f = parse_map(m.source());
    JonquieresMap g = JonquieresMap::identity();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    if (!json) std::cout << "k\tdeg\tbase-points\n";
    for (int i = 1; i <= k; ++i) {
      g = compose(f, g);
      int d = plane_degree(g);
      int b = base_point_count(g);
      if (json) {
        rows.push_back({{"k", i}, {"degree", d}, {"base_points", b}});
      } else {
        std::cout << i << '\t' << d << '\t' << b << '\n';
      }
    }
    if (json) std::cout << rows.dump(2) << '\n';
    return 0;
  });
}

int cmd_normal_form(const MapArgs& m, bool json) {
  return guarded(json, [&] {
    JonquieresMap f = parse_map(m.source());
    ClassifyOptions co;
    co.oracle_fallback = false;
    MuVerdict v = classify(f, co);
    JonquieresMap g = normal_form(f, v);
    std::string text = g.is_rational() ? serialize(g, m.var).fiber_matrix_text : format_fiber(g.fiber(), m.var);
    if (json) {
      std::cout << nlohmann::ordered_json{{"status", "ok"},
                                          {"case_tag", to_string(v.case_tag)},
                                          {"normal_form", text},
                                          {"rational", g.is_rational()},
                                          {"plane_degree", plane_degree(g)}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << text << '\n';
    }
    return 0;
  });
}

int cmd_ns_matrix(int d, bool json) {
  return guarded(json, [&] {
    NSMatrix m = ns_pushforward(d);
    bool form = preserves_lorentzian_form(m);
    bool canon = fixes_canonical_class(m);
    bool homaloidal = homaloidal_check(d, jonquieres_profile(d));
    if (json) {
      nlohmann::ordered_json cols = nlohmann::ordered_json::array();
      for (int j = 0; j < m.size(); ++j) cols.push_back(m.column(j));
      std::cout << nlohmann::ordered_json{{"d", d},
                                          {"columns", cols},
                                          {"preserves_lorentzian_form", form},
                                          {"fixes_canonical_class", canon},
                                          {"homaloidal_profile", homaloidal}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << "basis (l, e_0, ..., e_" << 2 * d - 2 << "), columns are images\n" << to_string(m);
      std::cout << "lorentzian form preserved: " << (form ? "yes" : "no") << '\n';
      std::cout << "canonical class fixed: " << (canon ? "yes" : "no") << '\n';
      std::cout << "homaloidal profile (" << d - 1 << ", 1^" << 2 * d - 2 << "): " << (homaloidal ? "yes" : "no")
                << '\n';
    }
    return form && canon && homaloidal ? 0 : kExitMismatch;
  });
}

int cmd_batch(const std::string& path, const CommonArgs& c, int jobs, bool strict) {
  std::vector<BatchEntry> entries;
  if (path == "-") {
    entries = read_batch(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open " << path << '\n';
      return kExitDomain;
    }
    entries = read_batch(in);
  }
  BatchResult b = run_batch(entries, c.options(), jobs);
  if (c.json) {
    std::cout << to_json(b, c.timings).dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < b.reports.size(); ++i) {
      const Report& r = b.reports[i];
      std::cout << "#" << i << "  " << r.input.fiber_matrix_text;
      if (r.input.base_matrix_text) std::cout << " ; " << *r.input.base_matrix_text;
      std::cout << "  ->  ";
      if (r.exit_code == kExitOk) {
        std::cout << r.case_tag.value_or(r.subgroup.value_or("")) << " mu=" << *r.mu() << '\n';
      } else {
        std::cout << r.status << ": " << r.error.value_or("") << '\n';
      }
    }
    std::cout << to_json(b.summary).dump() << '\n';
  }
  if (strict) {
    for (const Report& r : b.reports) {
      if (r.exit_code != kExitOk) return r.exit_code;
    }
  }
  return b.summary.mismatches > 0 ? kExitMismatch : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact mu invariant of Jonquieres twists"};
  app.require_subcommand(1);

  MapArgs map_args;
  CommonArgs common;
  int k = 10;
  int d = 2;
  int jobs = 1;
  bool strict = false;
  std::string batch_path;

  auto* classify_cmd = app.add_subcommand("classify", "case analysis, mu by formula and oracle");
  add_map_args(classify_cmd, map_args);
  add_common(classify_cmd, common);

  auto* mu_cmd = app.add_subcommand("mu", "mu of a map (any base action)");
  add_map_args(mu_cmd, map_args);
  add_common(mu_cmd, common);

  auto* iterate_cmd = app.add_subcommand("iterate", "degree and base-point count of f^1 .. f^k");
  add_map_args(iterate_cmd, map_args);
  iterate_cmd->add_option("-k", k, "number of iterates")->capture_default_str()->check(CLI::Range(1, 100000));
  iterate_cmd->add_flag("--json", common.json, "machine-readable output");

  auto* nf_cmd = app.add_subcommand("normal-form", "conjugate twist model of a map in J0");
  add_map_args(nf_cmd, map_args);
  nf_cmd->add_flag("--json", common.json, "machine-readable output");

  auto* ns_cmd = app.add_subcommand("ns-matrix", "lattice pushforward of a degree-d map");
  ns_cmd->add_option("-d", d, "degree")->required();
  ns_cmd->add_flag("--json", common.json, "machine-readable output");

  auto* batch_cmd = app.add_subcommand("batch", "reports for a file of maps ('-' for stdin)");
  batch_cmd->add_option("file", batch_path, "JSON array or one map per line")->required();
  add_common(batch_cmd, common);
  batch_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str()->check(CLI::Range(1, 256));
  auto* strict_flag = batch_cmd->add_flag("--strict", strict, "exit with the first failing entry's code");
  batch_cmd->add_flag("--keep-going", "record errors and exit 0 (default)")->excludes(strict_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParse;
  }

  if (*classify_cmd) return cmd_classify(map_args, common);
  if (*mu_cmd) return cmd_mu(map_args, common);
  if (*iterate_cmd) return cmd_iterate(map_args, k, common.json);
  if (*nf_cmd) return cmd_normal_form(map_args, common.json);
  if (*ns_cmd) return cmd_ns_matrix(d, common.json);
  return cmd_batch(batch_path, common, jobs, strict);
}
