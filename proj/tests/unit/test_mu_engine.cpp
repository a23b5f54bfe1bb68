#include <doctest.h>

#include "jonq/errors.hpp"
#include "jonq/parser.hpp"
#include "support.hpp"

using namespace jonq;
using namespace jonq::testing;

namespace {
UniPoly P(const char* s) { return parse_poly(s); }
JonquieresMap J(const char* fiber, std::optional<std::string> base = std::nullopt) {
  return parse_map(MapSource{fiber, std::move(base), "y"});
}

// Witness equations and the gcd pattern of the case.
void check_witnesses(const JonquieresMap& f, const MuVerdict& v) {
  const FiberMatrix& m = f.fiber();
  const auto& w = v.witnesses;
  if (v.case_tag == CaseTag::Case1) {
    REQUIRE(w.delta);
    CHECK(*w.delta * *w.delta == m.discriminant());
    return;
  }
  if (v.case_tag == CaseTag::Elliptic) return;
  REQUIRE(w.omega);
  UniPoly half = m.trace() * Scalar(Rational(1, 2));
  CHECK(*w.p_f * *w.omega == half);
  CHECK(*w.s_f * *w.omega == half * half - m.det());
  switch (v.case_tag) {
    case CaseTag::Case2a:
      CHECK(poly_gcd(*w.omega, *w.s_f).is_one());
      break;
    case CaseTag::Case2b:
      CHECK(*w.s_f == pow(*w.omega, *w.p) * *w.t_f);
      CHECK(poly_gcd(*w.t_f, *w.omega).is_one());
      break;
    case CaseTag::Case2c:
      CHECK(*w.omega == pow(*w.s_f, *w.p) * *w.t_f);
      CHECK(poly_gcd(*w.t_f, *w.s_f).is_one());
      break;
    default:
      break;
  }
}
}  // namespace

TEST_CASE("reference maps classify with the published mu") {
  for (const auto& r : reference_corpus()) {
    CAPTURE(r.name);
    JonquieresMap f = r.map();
    MuVerdict v = classify(f);
    CHECK(v.case_tag == r.tag);
    CHECK(v.mu == r.mu);
    CHECK_FALSE(v.mu_from_oracle);
    check_witnesses(f, v);
    CHECK(mu(f, MuMethod::Formula) == r.mu);
    CHECK(mu(f, MuMethod::Oracle) == r.mu);
    CHECK(mu(f) == r.mu);
  }
}

TEST_CASE("witness values of the reference maps") {
  MuVerdict v = classify(reference("twist_2a_small_s").map());
  CHECK(*v.witnesses.omega == P("y"));
  CHECK(v.witnesses.p_f->degree() == 1);
  CHECK(v.witnesses.s_f->degree() == 3);

  v = classify(reference("twist_2b_large_s").map());
  CHECK(*v.witnesses.omega == P("y"));
  CHECK(*v.witnesses.p_f == P("y+2"));
  CHECK(*v.witnesses.s_f == P("y^4"));
  CHECK(*v.witnesses.p == 4);

  v = classify(reference("twist_2c").map());
  CHECK(*v.witnesses.omega == P("y*(y+2)"));
  CHECK(*v.witnesses.p_f == P("y+1"));
  CHECK(*v.witnesses.s_f == P("y"));
  CHECK(*v.witnesses.p == 1);
  CHECK(*v.witnesses.t_f == P("y+2"));
}

TEST_CASE("elliptic maps") {
  for (const char* m : {"[[2, 0],[0, 1]]", "[[1, 0],[0, 1]]", "[[1, y^3],[0, 1]]", "[[0, y^2+1],[1, 0]]"}) {
    CAPTURE(m);
    MuVerdict v = classify(J(m));
    CHECK(v.case_tag == CaseTag::Elliptic);
    CHECK(v.mu == 0);
    CHECK(mu(J(m)) == 0);
    CHECK_THROWS_AS(normal_form(J(m), v), DomainError);
  }
}

TEST_CASE("quadratic extension in Case1") {
  // F = 2 (y+1)^2: eigenvalues P +- sqrt(2)(y+1).
  JonquieresMap f = J("[[y, 2*(y+1)^2],[1, y]]");
  MuVerdict v = classify(f);
  CHECK(v.case_tag == CaseTag::Case1);
  CHECK_FALSE(v.normal_form->is_rational());
  CHECK(v.mu == mu_oracle(f));
  check_witnesses(f, v);
  CHECK(plane_degree(*v.normal_form) <= plane_degree(f));
}

TEST_CASE("normal forms") {
  JonquieresMap affine = reference("affine_case1").map();
  CHECK(normal_form(affine, classify(affine)) == J("[[y, 0],[0, 1]]"));
  JonquieresMap jm = reference("jm_quadratic").map();
  MuVerdict v = classify(jm);
  JonquieresMap g = normal_form(jm, v);
  CHECK((g == jm || g == inverse(jm)));
  JonquieresMap jf = reference("twist_2b_large_s").map();
  CHECK(normal_form(jf, classify(jf)) == jf);

  Rng rng(31);
  for (CaseTag tag : {CaseTag::Case1, CaseTag::Case2a, CaseTag::Case2b, CaseTag::Case2c}) {
    for (int i = 0; i < 15; ++i) {
      JonquieresMap f = random_twist(rng, tag);
      MuVerdict vf = classify(f);
      JonquieresMap nf = normal_form(f, vf);
      MuVerdict vg = classify(nf);
      CHECK(vg.case_tag == vf.case_tag);
      CHECK(vg.mu == vf.mu);
      check_witnesses(f, vf);
      if (tag == CaseTag::Case1) CHECK(plane_degree(nf) <= plane_degree(f));
    }
  }
}

TEST_CASE("constant S fits both 2a and 2c with the same mu") {
  // Omega ~ S would make the discriminant a square, so this is the only overlap.
  JonquieresMap f = J("[[y*(y+1), 3*y*(y+1)],[1, y*(y+1)]]");
  MuVerdict v = classify(f);
  REQUIRE(v.case_tag == CaseTag::Case2a);
  const int o = v.witnesses.omega->degree(), p = v.witnesses.p_f->degree(), s = v.witnesses.s_f->degree();
  CHECK(s == 0);
  CHECK(*v.mu == 2 * p + o - s);
  CHECK(*v.mu == mu_oracle(f));
}

TEST_CASE("unresolved gcd pattern falls back to the oracle") {
  JonquieresMap f = J("[[y*(y+1)^2, y*(y+1)^3*(y+2)],[1, y*(y+1)^2]]");
  ClassifyOptions no_fallback;
  no_fallback.oracle_fallback = false;
  MuVerdict v = classify(f, no_fallback);
  CHECK(v.case_tag == CaseTag::Unresolved);
  CHECK_FALSE(v.mu);
  CHECK(v.normal_form);
  MuVerdict w = classify(f);
  CHECK(w.mu == 2);
  CHECK(w.mu_from_oracle);
  CHECK(mu(f) == 2);
  CHECK(degree_sequence(f, 6).degrees == std::vector<int>{5, 5, 7, 7, 9, 9});
}

TEST_CASE("degree sequences and the oracle") {
  CHECK(degree_sequence(reference("jm_quadratic").map(), 5).degrees == std::vector<int>{3, 5, 7, 9, 11});
  CHECK(degree_sequence(reference("twist_2a_large_s").map(), 5).degrees == std::vector<int>{8, 10, 17, 19, 26});
  CHECK_THROWS_AS(degree_sequence(JonquieresMap::identity(), 3), DomainError);
  OracleResult r = mu_oracle_detailed(reference("twist_2a_large_s").map());
  CHECK(r.mu == 9);
  CHECK(r.sequence.stride == 2);
  CHECK(r.sequence.slope_numerator == 9);
  CHECK(mu_oracle(family_ft(Rational(1, 2))) == 0);
  CHECK(mu_oracle(family_ft(2)) == 2);
  CHECK(mu_oracle(family_ft(0)) == 2);
}

TEST_CASE("finite-order base actions") {
  JonquieresMap f = J("[[y, 0],[0, 1]]", "[[-1, 0],[0, 1]]");
  CHECK(mu_non_base_wandering(f) == 2);
  CHECK(mu_oracle(f) == 2);
  CHECK(mu_any(f) == 2);
  JonquieresMap j0 = reference("twist_2c").map();
  CHECK(mu_non_base_wandering(j0) == 3);
  CHECK(mu_non_base_wandering(J("[[1, 1],[0, 1]]")) == 0);
  CHECK_THROWS_WITH_AS(mu_non_base_wandering(family_ft(2)), doctest::Contains("base-wandering"), DomainError);
  CHECK_THROWS_AS(mu(f), DomainError);
  CHECK_THROWS_AS(mu_any(family_ft(2), MuMethod::Formula), DomainError);

  Rng rng(32);
  const Moebius bases[] = {Moebius(-1, 0, 0, 1), Moebius(0, 1, 1, 0), Moebius(0, -1, 1, 1), Moebius(0, -1, 1, 0)};
  for (int i = 0; i < 16; ++i) {
    JonquieresMap g(random_fiber(rng, 2), bases[i % 4]);
    CHECK(mu_any(g, MuMethod::Both) == mu_oracle(g));
  }
}

TEST_CASE("power law and the degree bound") {
  auto [a, b] = mu_power_check(reference("jm_quadratic").map(), 3);
  CHECK(a == 12);
  CHECK(b == 12);
  auto [c, d] = mu_power_check(reference("twist_2b_large_s").map(), 2);
  CHECK(c == 6);
  CHECK(d == 6);
  auto [e, g] = mu_power_check(reference("twist_2c").map(), 1);
  CHECK(e == g);
  CHECK_THROWS_AS(mu_power_check(reference("twist_2c").map(), 0), DomainError);
  CHECK(mu_upper_bound_check(reference("twist_2a_large_s").map()));
  CHECK(mu_upper_bound_check(reference("twist_2b_small_s").map()));
  CHECK(mu_upper_bound_check(JonquieresMap::identity()));
}

TEST_CASE("lemma degree formulas") {
  MuVerdict v = classify(reference("twist_2b_large_s").map());
  for (int l = 1; l <= 8; ++l) CHECK(lemma_degree_formula(v, 2 * l) == 3 * (l + 1));
  v = classify(reference("twist_2c").map());
  for (int l = 1; l <= 8; ++l) CHECK(lemma_degree_formula(v, 2 * l) == 3 * l + 2);
  // The normal form of the small-S 2a map is not the map itself: its even
  // iterates have degree 3l + 2 where the map's have 3l + 1.
  JonquieresMap f = reference("twist_2a_small_s").map();
  v = classify(f);
  for (int l = 1; l <= 8; ++l) CHECK(lemma_degree_formula(v, 2 * l) == 3 * l + 2);
  CHECK(degree_sequence(normal_form(f, v), 8).degrees == std::vector<int>{4, 5, 7, 8, 10, 11, 13, 14});
  CHECK_THROWS_AS(lemma_degree_formula(classify(reference("jm_quadratic").map()), 2), DomainError);
  CHECK_THROWS_AS(lemma_degree_formula(v, 0), DomainError);
}

TEST_CASE("errors and method names") {
  CHECK_THROWS_AS(classify(family_ft(2)), DomainError);
  CHECK(parse_mu_method("both") == MuMethod::Both);
  CHECK(to_string(MuMethod::Oracle) == "oracle");
  CHECK_THROWS_AS(parse_mu_method("guess"), DomainError);
  CHECK(to_string(CaseTag::Case2b) == "Case2b");
  CHECK(family_ft(Rational(1, 2)).base() == Moebius::translation(Rational(1, 2)));
}
