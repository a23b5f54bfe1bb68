#include "jonq/mu.hpp"

#include <algorithm>

#include "jonq/errors.hpp"

namespace jonq {

std::string to_string(CaseTag t) {
  switch (t) {
    case CaseTag::Elliptic: return "Elliptic";
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2a: return "Case2a";
    case CaseTag::Case2b: return "Case2b";
    case CaseTag::Case2c: return "Case2c";
    case CaseTag::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

std::string to_string(MuMethod m) {
  switch (m) {
    case MuMethod::Formula: return "formula";
    case MuMethod::Oracle: return "oracle";
    case MuMethod::Both: return "both";
  }
  return "both";
}

MuMethod parse_mu_method(const std::string& s) {
  if (s == "formula") return MuMethod::Formula;
  if (s == "oracle") return MuMethod::Oracle;
  if (s == "both") return MuMethod::Both;
  throw DomainError("unknown method '" + s + "' (expected formula, oracle or both)");
}

namespace {

struct PowerSplit {
  int p = 0;
  UniPoly rest;
};

// x = base^p * rest with base not dividing rest (base nonconstant).
PowerSplit split_power(UniPoly x, const UniPoly& base) {
  PowerSplit out;
  if (base.is_constant()) {
    out.rest = std::move(x);
    return out;
  }
  for (;;) {
    auto [q, r] = divrem(x, base);
    if (!r.is_zero()) break;
    x = std::move(q);
    ++out.p;
  }
  out.rest = std::move(x);
  return out;
}

bool coprime(const UniPoly& a, const UniPoly& b) { return poly_gcd(a, b).is_one(); }

JonquieresMap jf_model(const UniPoly& p, const UniPoly& f) {
  return JonquieresMap(FiberMatrix(p, f, UniPoly::constant(1), p));
}

}  // namespace

MuVerdict classify(const JonquieresMap& f, const ClassifyOptions& opts) {
  if (!f.in_j0()) throw DomainError("classify requires a map in J0 (trivial base action)");
  const FiberMatrix& m = f.fiber();
  const UniPoly tr = m.trace();
  const UniPoly det = m.det();
  MuVerdict v;

  if (RatFunc(tr * tr, det).is_constant()) {
    v.case_tag = CaseTag::Elliptic;
    v.mu = 0;
    return v;
  }

  const UniPoly disc = tr * tr - det * Scalar(4);
  if (auto sq = poly_sqrt(disc)) {
    UniPoly delta = sq->root * field_sqrt(sq->leading, m.radicand());
    RatFunc a(tr + delta, tr - delta);
    v.case_tag = CaseTag::Case1;
    v.mu = 2 * a.height();
    v.witnesses.delta = delta;
    v.normal_form = JonquieresMap(FiberMatrix(a.num(), UniPoly(), UniPoly(), a.den()));
    return v;
  }

  const UniPoly half_tr = tr * Scalar(Rational(1, 2));
  const UniPoly f_part = half_tr * half_tr - det;
  const UniPoly omega = poly_gcd(half_tr, f_part);
  const UniPoly p_f = exact_div(half_tr, omega);
  const UniPoly s_f = exact_div(f_part, omega);
  v.witnesses.omega = omega;
  v.witnesses.p_f = p_f;
  v.witnesses.s_f = s_f;
  v.normal_form = jf_model(half_tr, f_part);

  const int d_omega = omega.degree();
  const int d_p = p_f.degree();
  const int d_s = s_f.degree();
  const bool s_small = d_s <= d_omega + 2 * d_p;

  if (coprime(omega, s_f)) {
    v.case_tag = CaseTag::Case2a;
    v.mu = s_small ? d_omega + 2 * d_p : d_s;
    return v;
  }
  if (PowerSplit sp = split_power(s_f, omega); sp.p >= 1 && coprime(sp.rest, omega)) {
    v.case_tag = CaseTag::Case2b;
    v.mu = s_small ? 2 * d_p : d_s - d_omega;
    v.witnesses.t_f = sp.rest;
    v.witnesses.p = sp.p;
    return v;
  }
  if (PowerSplit sp = split_power(omega, s_f); sp.p >= 1 && coprime(sp.rest, s_f)) {
    v.case_tag = CaseTag::Case2c;
    v.mu = 2 * d_p + d_omega - d_s;
    v.witnesses.t_f = sp.rest;
    v.witnesses.p = sp.p;
    return v;
  }

  v.case_tag = CaseTag::Unresolved;
  if (opts.oracle_fallback) {
    v.mu = mu_oracle(f, opts.oracle);
    v.mu_from_oracle = true;
  }
  return v;
}

JonquieresMap normal_form(const JonquieresMap& f, const MuVerdict& verdict) {
  if (verdict.case_tag == CaseTag::Elliptic) {
    throw DomainError("elliptic map: no twist normal form");
  }
  if (verdict.normal_form) return *verdict.normal_form;
  ClassifyOptions opts;
  opts.oracle_fallback = false;
  MuVerdict fresh = classify(f, opts);
  if (!fresh.normal_form) throw DomainError("elliptic map: no twist normal form");
  return *fresh.normal_form;
}

namespace {

int default_stride(const JonquieresMap& f) {
  if (f.in_j0()) return 2;
  if (auto l = moebius_order(f.base())) return 2 * *l;
  return 2;
}

void extend_degrees(const JonquieresMap& f, std::vector<int>& degrees, JonquieresMap& last, int kmax) {
  while (static_cast<int>(degrees.size()) < kmax) {
    last = degrees.empty() ? f : compose(f, last);
    degrees.push_back(plane_degree(last));
  }
}

// Common stride difference over the trailing window of every residue class.
std::optional<int> stable_difference(const std::vector<int>& degrees, int stride, int window) {
  std::optional<int> common;
  for (int r = 0; r < stride; ++r) {
    std::vector<int> diffs;
    for (std::size_t k = static_cast<std::size_t>(r + stride); k < degrees.size(); k += static_cast<std::size_t>(stride)) {
      diffs.push_back(degrees[k] - degrees[k - static_cast<std::size_t>(stride)]);
    }
    if (static_cast<int>(diffs.size()) < window) return std::nullopt;
    const int last = diffs.back();
    for (int i = 1; i <= window; ++i) {
      if (diffs[diffs.size() - static_cast<std::size_t>(i)] != last) return std::nullopt;
    }
    if (common && *common != last) return std::nullopt;
    common = last;
  }
  return common;
}

bool looks_bounded(const std::vector<int>& degrees) {
  const auto half = degrees.begin() + static_cast<std::ptrdiff_t>(degrees.size() / 2);
  return *std::max_element(half, degrees.end()) <= *std::max_element(degrees.begin(), half);
}

}  // namespace

DegreeSequence degree_sequence(const JonquieresMap& f, int kmax) {
  if (kmax < 4) throw DomainError("degree_sequence needs kmax >= 4");
  DegreeSequence seq;
  seq.stride = default_stride(f);
  JonquieresMap last = f;
  extend_degrees(f, seq.degrees, last, kmax);
  return seq;
}

OracleResult mu_oracle_detailed(const JonquieresMap& f, const OracleOptions& opts) {
  DegreeSequence seq;
  const int base_stride = opts.stride > 0 ? opts.stride : default_stride(f);
  seq.stride = base_stride;
  const int window = std::max(opts.window, 1);
  int kmax = std::max(opts.kmax, base_stride * (window + 2));
  JonquieresMap last = f;

  auto accept = [&](int stride, int diff) -> OracleResult {
    seq.stride = stride;
    seq.slope_numerator = diff;
    if ((2 * diff) % stride != 0) {
      throw OracleError("oracle slope " + std::to_string(diff) + "/" + std::to_string(stride) +
                            " does not give an integral mu",
                        seq);
    }
    return {2 * diff / stride, seq};
  };

  const int attempts = opts.escalate ? 2 : 1;
  for (int attempt = 0; attempt < attempts; ++attempt, kmax *= 2) {
    extend_degrees(f, seq.degrees, last, kmax);
    if (auto diff = stable_difference(seq.degrees, base_stride, window)) return accept(base_stride, *diff);
  }
  // Conjugates of twists can oscillate with a longer period (e.g. eigenvalue
  // ratios with a root-of-unity constant factor); only then try multiples.
  for (int m : {2, 3, 4, 6}) {
    if (auto diff = stable_difference(seq.degrees, m * base_stride, window)) return accept(m * base_stride, *diff);
  }
  if (looks_bounded(seq.degrees)) {
    seq.slope_numerator = 0;
    return {0, seq};
  }
  throw OracleError("oracle did not stabilize within k = " + std::to_string(seq.degrees.size()), seq);
}

int mu_oracle(const JonquieresMap& f, const OracleOptions& opts) { return mu_oracle_detailed(f, opts).mu; }

int mu(const JonquieresMap& f, MuMethod method, const OracleOptions& opts) {
  if (!f.in_j0()) throw DomainError("mu requires a map in J0; use mu_non_base_wandering or mu_any");
  ClassifyOptions copts;
  copts.oracle = opts;
  switch (method) {
    case MuMethod::Formula: return *classify(f, copts).mu;
    case MuMethod::Oracle: return mu_oracle(f, opts);
    case MuMethod::Both: break;
  }
  copts.oracle_fallback = false;
  MuVerdict v = classify(f, copts);
  int oracle = mu_oracle(f, opts);
  if (v.mu && *v.mu != oracle) {
    throw ConsistencyError("formula gives mu = " + std::to_string(*v.mu) + " (" + to_string(v.case_tag) +
                               ") but the oracle gives " + std::to_string(oracle),
                           v.mu, oracle, v);
  }
  return oracle;
}

int mu_non_base_wandering(const JonquieresMap& f, MuMethod method) {
  auto order = moebius_order(f.base());
  if (!order) throw DomainError("base-wandering: corollary inapplicable");
  const int l = *order;
  JonquieresMap power = iterate(f, l);
  int m = mu(power, method);
  if (m % l != 0) {
    throw ConsistencyError("mu(f^" + std::to_string(l) + ") = " + std::to_string(m) + " is not divisible by " +
                               std::to_string(l),
                           m, std::nullopt, std::nullopt);
  }
  return m / l;
}

int mu_any(const JonquieresMap& f, MuMethod method) {
  if (f.in_j0()) return mu(f, method);
  if (moebius_order(f.base())) {
    int via_power = mu_non_base_wandering(f, method == MuMethod::Oracle ? MuMethod::Oracle : MuMethod::Formula);
    if (method == MuMethod::Both) {
      int direct = mu_oracle(f);
      if (direct != via_power) {
        throw ConsistencyError("corollary gives mu = " + std::to_string(via_power) + " but the oracle gives " +
                                   std::to_string(direct),
                               via_power, direct, std::nullopt);
      }
    }
    return via_power;
  }
  if (method == MuMethod::Formula) throw DomainError("base-wandering map: no closed form for mu");
  return mu_oracle(f);
}

std::pair<int, int> mu_power_check(const JonquieresMap& f, int k, MuMethod method) {
  if (k < 1) throw DomainError("mu_power_check needs k >= 1");
  return {k * mu(f, method), mu(iterate(f, k), method)};
}

bool mu_upper_bound_check(const JonquieresMap& f) { return mu_any(f) <= 2 * plane_degree(f) - 1; }

int lemma_degree_formula(const MuVerdict& v, int k) {
  if (k < 1) throw DomainError("lemma_degree_formula needs k >= 1");
  const auto& w = v.witnesses;
  if (v.case_tag != CaseTag::Case2a && v.case_tag != CaseTag::Case2b && v.case_tag != CaseTag::Case2c) {
    throw DomainError("lemma degree formulas exist only for Case2a/2b/2c, got " + to_string(v.case_tag));
  }
  if (!w.omega || !w.p_f || !w.s_f) throw DomainError("verdict carries no Case 2 witnesses");
  const int o = w.omega->degree();
  const int p = w.p_f->degree();
  const int s = w.s_f->degree();
  const int l = k / 2;
  const bool even = k % 2 == 0;
  const bool small = s <= o + 2 * p;

  switch (v.case_tag) {
    case CaseTag::Case2a:
      if (even) {
        return small ? std::max({l * (o + 2 * p) + 1, s + l * o + (2 * l - 1) * p, (l - 1) * o + (2 * l - 1) * p + 2})
                     : std::max({l * s + 1, o + p + l * s, p + (l - 1) * s + 2});
      }
      return small ? std::max({(l + 1) * o + (2 * l + 1) * p + 1, (l + 1) * o + 2 * l * p + s, l * (o + 2 * p) + 2})
                   : std::max({l * s + p + o + 1, (l + 1) * s + o, l * s + 2});
    case CaseTag::Case2b:
      if (even) {
        return small ? std::max({2 * l * p + o + 1, (2 * l - 1) * p + o + s, (2 * l - 1) * p + 1})
                     : std::max({l * s - (l - 1) * o + 1, l * s + (2 - l) * o + p, (l - 1) * (s - o) + p + 1});
      }
      return small ? std::max({(2 * l + 1) * p + o + 1, 2 * l * p + o + s, 2 * l * p + 1})
                   : std::max({l * s - (l - 1) * o + p + 1, (l + 1) * s - (l - 1) * o, l * s - l * o + 1});
    default: {
      if (!w.t_f || !w.p) throw DomainError("Case2c verdict carries no T_f / p witnesses");
      const int t = w.t_f->degree();
      const int e = *w.p;
      if (even) {
        return std::max({(e * l - l + 1) * s + 2 * l * p + l * t + 1, (l * (e - 1) + 2) * s + (2 * l - 1) * p + l * t,
                         (l - 1) * (e - 1) * s + (2 * l - 1) * p + (l - 1) * t + 2});
      }
      return std::max({(e + l * (e - 1)) * s + (l + 1) * t + (2 * l + 1) * p + 1,
                       (e + 1 + l * (e - 1)) * s + 2 * l * p + (l + 1) * t, 2 * l * p + l * t + l * (e - 1) * s + 2});
    }
  }
}

JonquieresMap family_ft(const Rational& t) {
  UniPoly y = UniPoly::var();
  return JonquieresMap(FiberMatrix(y, UniPoly(), UniPoly(), y + UniPoly::constant(1)), Moebius::translation(t));
}

}  // namespace jonq
