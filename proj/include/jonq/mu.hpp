#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jonq/jonquieres.hpp"
#include "jonq/poly.hpp"

namespace jonq {

enum class CaseTag { Elliptic, Case1, Case2a, Case2b, Case2c, Unresolved };
std::string to_string(CaseTag t);

/// Polynomials read off the fiber matrix that certify a classification.
///
/// Case1 fills `delta` (delta^2 = discriminant). Case 2 fills omega, p_f, s_f
/// with Tr/2 = p_f * omega and (Tr/2)^2 - det = s_f * omega; Case2b has
/// s_f = omega^p * t_f, Case2c has omega = s_f^p * t_f.
struct Witnesses {
  std::optional<UniPoly> delta;
  std::optional<UniPoly> omega;
  std::optional<UniPoly> p_f;
  std::optional<UniPoly> s_f;
  std::optional<UniPoly> t_f;
  std::optional<int> p;
};

struct MuVerdict {
  CaseTag case_tag = CaseTag::Unresolved;
  std::optional<int> mu;
  std::optional<JonquieresMap> normal_form;
  Witnesses witnesses;
  /// True when `mu` was produced by the degree-growth oracle rather than a
  /// closed form (only for Unresolved).
  bool mu_from_oracle = false;
};

struct DegreeSequence {
  std::vector<int> degrees;  // deg f^1 .. deg f^kmax
  int stride = 2;
  /// Stabilized deg f^(k+stride) - deg f^k, once known.
  std::optional<int> slope_numerator;
};

struct OracleOptions {
  int kmax = 24;
  int stride = 0;  // 0 = choose from the base action
  int window = 3;
  bool escalate = true;
};

enum class MuMethod { Formula, Oracle, Both };
std::string to_string(MuMethod m);
MuMethod parse_mu_method(const std::string& s);

/// The degree-growth oracle could not read off a stable slope.
class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& msg, DegreeSequence seq)
      : std::runtime_error(msg), sequence_(std::move(seq)) {}
  const DegreeSequence& sequence() const { return sequence_; }

 private:
  DegreeSequence sequence_;
};

/// Closed form and oracle disagree. Never resolved silently.
class ConsistencyError : public std::runtime_error {
 public:
  ConsistencyError(const std::string& msg, std::optional<int> formula, std::optional<int> oracle,
                   std::optional<MuVerdict> verdict)
      : std::runtime_error(msg), formula_(formula), oracle_(oracle), verdict_(std::move(verdict)) {}
  std::optional<int> formula() const { return formula_; }
  std::optional<int> oracle() const { return oracle_; }
  const std::optional<MuVerdict>& verdict() const { return verdict_; }

 private:
  std::optional<int> formula_;
  std::optional<int> oracle_;
  std::optional<MuVerdict> verdict_;
};

struct ClassifyOptions {
  /// Fill mu for Unresolved verdicts by running the oracle.
  bool oracle_fallback = true;
  OracleOptions oracle;
};

/// Case analysis of a map in J0 on its canonical primitive representative.
MuVerdict classify(const JonquieresMap& f, const ClassifyOptions& opts = {});

/// Conjugate model of a twist: (a(y) x, y) in Case1, ((P x + F)/(x + P), y) in
/// Case 2. Throws DomainError for elliptic maps.
JonquieresMap normal_form(const JonquieresMap& f, const MuVerdict& verdict);

/// Exact plane degrees of f^1 .. f^kmax.
DegreeSequence degree_sequence(const JonquieresMap& f, int kmax);

struct OracleResult {
  int mu;
  DegreeSequence sequence;
};

/// mu = 2 lim deg(f^k) / k, read off once stride differences are constant on
/// a trailing window in every residue class.
OracleResult mu_oracle_detailed(const JonquieresMap& f, const OracleOptions& opts = {});
int mu_oracle(const JonquieresMap& f, const OracleOptions& opts = {});

int mu(const JonquieresMap& f, MuMethod method = MuMethod::Both, const OracleOptions& opts = {});

/// mu(f) = mu(f^l) / l where l is the order of the base action.
int mu_non_base_wandering(const JonquieresMap& f, MuMethod method = MuMethod::Both);

/// (k * mu(f), mu(f^k)).
std::pair<int, int> mu_power_check(const JonquieresMap& f, int k, MuMethod method = MuMethod::Both);

/// mu(f) <= 2 deg(f) - 1, with mu computed by the best available route.
bool mu_upper_bound_check(const JonquieresMap& f);
/// mu for any element of J: formula route in J0 and for finite-order bases,
/// oracle otherwise.
int mu_any(const JonquieresMap& f, MuMethod method = MuMethod::Both);

/// Closed-form deg(g^k) for the Case 2 normal form g, from the witness
/// degrees. Diagnostic only.
int lemma_degree_formula(const MuVerdict& verdict, int k);

/// (x, y) -> (y/(y+1) * x, y + t).
JonquieresMap family_ft(const Rational& t);

}  // namespace jonq
