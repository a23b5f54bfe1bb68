#include "support.hpp"

#include <stdexcept>

namespace jonq::testing {

JonquieresMap ReferenceMap::map() const {
  MapSource s;
  s.fiber_matrix_text = fiber;
  s.base_matrix_text = base;
  return parse_map(s);
}

const std::vector<ReferenceMap>& reference_corpus() {
  static const std::vector<ReferenceMap> corpus = {
      {"jm_quadratic", "[[(1-y)*y, 0],[0, 1]]", std::nullopt, 4, CaseTag::Case1},
      {"affine_case1", "[[y, y*(y-1)],[0, 1]]", std::nullopt, 2, CaseTag::Case1},
      {"twist_2a_small_s", "[[-y^2, y],[1, 0]]", std::nullopt, 3, CaseTag::Case2a},
      {"twist_2a_large_s", "[[y, 2*y^8],[y, 1]]", std::nullopt, 9, CaseTag::Case2a},
      {"twist_2b_large_s", "[[y*(y+2), y^5],[1, y*(y+2)]]", std::nullopt, 3, CaseTag::Case2b},
      {"twist_2b_small_s", "[[y*(y+2)^8, y^5],[1, y*(y+2)^8]]", std::nullopt, 16, CaseTag::Case2b},
      {"twist_2c", "[[y*(y+1)*(y+2), y^2],[y+2, y*(y+1)*(y+2)]]", std::nullopt, 3, CaseTag::Case2c},
  };
  return corpus;
}

const ReferenceMap& reference(const std::string& name) {
  for (const auto& r : reference_corpus()) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no reference map " + name);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

UniPoly random_poly(Rng& rng, int deg, int lo, int hi) {
  if (deg < 0) return {};
  std::vector<Scalar> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(uniform(rng, lo, hi));
  while (c.back().is_zero()) c.back() = Scalar(uniform(rng, lo, hi));
  return UniPoly(std::move(c));
}

UniPoly random_nonzero_poly(Rng& rng, int max_deg, int lo, int hi) {
  return random_poly(rng, uniform(rng, 0, max_deg), lo, hi);
}

UniPoly random_monic(Rng& rng, int deg, int lo, int hi) {
  UniPoly p = random_poly(rng, deg, lo, hi);
  return p.monic();
}

Moebius random_moebius(Rng& rng, int lo, int hi) {
  for (;;) {
    int a = uniform(rng, lo, hi), b = uniform(rng, lo, hi), c = uniform(rng, lo, hi), d = uniform(rng, lo, hi);
    if (a * d - b * c != 0) return Moebius(a, b, c, d);
  }
}

FiberMatrix random_fiber(Rng& rng, int max_deg) {
  for (;;) {
    std::array<UniPoly, 4> e;
    for (auto& x : e) x = uniform(rng, 0, 4) == 0 ? UniPoly() : random_nonzero_poly(rng, max_deg);
    if ((e[0] * e[3] - e[1] * e[2]).is_zero()) continue;
    return FiberMatrix(e[0], e[1], e[2], e[3]);
  }
}

JonquieresMap random_j0(Rng& rng, int max_deg) { return JonquieresMap(random_fiber(rng, max_deg)); }

JonquieresMap random_map(Rng& rng, int max_deg) {
  Moebius h = uniform(rng, 0, 2) == 0 ? Moebius::identity() : random_moebius(rng);
  return JonquieresMap(random_fiber(rng, max_deg), h);
}

namespace {

bool coprime(const UniPoly& a, const UniPoly& b) { return poly_gcd(a, b).is_one(); }

// c * h^2 for a constant c and polynomial h.
bool is_constant_times_square(const UniPoly& p) {
  for (const auto& f : squarefree_decomposition(p)) {
    if (f.multiplicity % 2 != 0) return false;
  }
  return true;
}

// Q M Q^-1 for Q a product of elementary matrices (det Q = 1).
std::array<UniPoly, 4> conjugate_elementary(Rng& rng, std::array<UniPoly, 4> m, int budget) {
  auto mul = [](const std::array<UniPoly, 4>& l, const std::array<UniPoly, 4>& r) {
    return std::array<UniPoly, 4>{l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3], l[2] * r[0] + l[3] * r[2],
                                  l[2] * r[1] + l[3] * r[3]};
  };
  const UniPoly one = UniPoly::constant(1);
  const int upper_deg = std::min(1, budget / 2);
  UniPoly r = random_poly(rng, uniform(rng, 0, upper_deg), -3, 3);
  UniPoly s = UniPoly::constant(Scalar(uniform(rng, -2, 2)));
  std::array<UniPoly, 4> q1{one, r, UniPoly(), one}, q1i{one, -r, UniPoly(), one};
  std::array<UniPoly, 4> q2{one, UniPoly(), s, one}, q2i{one, UniPoly(), -s, one};
  return mul(mul(q2, mul(mul(q1, m), q1i)), q2i);
}

int max_deg(const std::array<UniPoly, 4>& m) {
  int d = 0;
  for (const auto& x : m) d = std::max(d, x.degree());
  return d;
}

JonquieresMap finish(Rng& rng, std::array<UniPoly, 4> m) {
  auto c = conjugate_elementary(rng, m, 6 - max_deg(m));
  if (max_deg(c) > 6) c = m;
  return JonquieresMap(FiberMatrix(c[0], c[1], c[2], c[3]));
}

}  // namespace

JonquieresMap random_twist(Rng& rng, CaseTag tag) {
  const UniPoly one = UniPoly::constant(1);
  for (;;) {
    switch (tag) {
      case CaseTag::Case1: {
        if (uniform(rng, 0, 2) == 0) {
          // JF shape with F = c h^2, c not a rational square: eigenvalues in Q(sqrt c).
          static const int radicands[] = {2, 3, 5, -1, -3};
          int c = radicands[uniform(rng, 0, 4)];
          UniPoly p = random_nonzero_poly(rng, 2);
          UniPoly h = random_nonzero_poly(rng, 2);
          UniPoly f = h * h * Scalar(c);
          if (!RatFunc(p * p, p * p - f).is_constant()) {
            return finish(rng, {p, f, one, p});
          }
          continue;
        }
        UniPoly a1 = random_nonzero_poly(rng, 3), a2 = random_nonzero_poly(rng, 3);
        UniPoly b = uniform(rng, 0, 1) ? random_nonzero_poly(rng, 3) : UniPoly();
        if (RatFunc(a1, a2).is_constant()) continue;
        return finish(rng, {a1, b, UniPoly(), a2});
      }
      case CaseTag::Case2a: {
        UniPoly omega = random_monic(rng, uniform(rng, 0, 2));
        UniPoly pf = random_nonzero_poly(rng, 2);
        UniPoly s = random_nonzero_poly(rng, 4);
        if (omega.degree() + pf.degree() > 4 || omega.degree() + s.degree() > 5) continue;
        if (!coprime(omega, s) || !coprime(pf, s)) continue;
        UniPoly p = pf * omega, f = s * omega;
        if (is_constant_times_square(f)) continue;
        return finish(rng, {p, f, one, p});
      }
      case CaseTag::Case2b: {
        UniPoly omega = random_monic(rng, uniform(rng, 1, 2));
        int e = uniform(rng, 1, 2);
        UniPoly t = random_nonzero_poly(rng, 1);
        UniPoly pf = random_nonzero_poly(rng, 2);
        UniPoly s = pow(omega, e) * t;
        if (s.degree() > 4 || omega.degree() + s.degree() > 6 || omega.degree() + pf.degree() > 4) continue;
        if (!coprime(t, omega) || !coprime(pf, s)) continue;
        UniPoly p = pf * omega, f = s * omega;
        if (is_constant_times_square(f)) continue;
        return finish(rng, {p, f, one, p});
      }
      case CaseTag::Case2c: {
        UniPoly s = random_poly(rng, uniform(rng, 1, 2));
        int e = uniform(rng, 1, 2);
        UniPoly t = random_nonzero_poly(rng, 1);
        UniPoly pf = random_nonzero_poly(rng, 1);
        UniPoly omega = (pow(s, e) * t).monic();
        if (omega.degree() <= s.degree() || omega.degree() > 4 || omega.degree() + pf.degree() > 5) continue;
        if (!coprime(t, s) || !coprime(pf, s)) continue;
        UniPoly p = pf * omega, f = s * omega;
        if (f.degree() > 6 || is_constant_times_square(f)) continue;
        return finish(rng, {p, f, one, p});
      }
      default:
        throw std::invalid_argument("random_twist: not a resolved twist case");
    }
  }
}

int reference_plane_degree(const JonquieresMap& f, Rng& rng) {
  // Components (Z', X', Y') = ((Cx+D)(cy+d), (Ax+B)(cy+d), (Cx+D)(ay+b)), each
  // stored as (coefficient of x, coefficient of 1) in K[y].
  const FiberMatrix& m = f.fiber();
  const auto& h = f.base().entries();
  UniPoly num_y{h[1], h[0]}, den_y{h[3], h[2]};
  std::array<std::pair<UniPoly, UniPoly>, 3> comps{
      std::pair{m.c() * den_y, m.d() * den_y}, std::pair{m.a() * den_y, m.b() * den_y},
      std::pair{m.c() * num_y, m.d() * num_y}};
  int e = 0;
  for (const auto& [cx, c1] : comps) {
    if (!cx.is_zero()) e = std::max(e, cx.degree() + 1);
    if (!c1.is_zero()) e = std::max(e, c1.degree());
  }
  int best = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto lin = [&] { return UniPoly{Scalar(uniform(rng, -60, 60)), Scalar(uniform(rng, 1, 60))}; };
    UniPoly X = lin(), Y = lin(), Z = lin();
    std::vector<UniPoly> xp{UniPoly::constant(1)}, yp{UniPoly::constant(1)}, zp{UniPoly::constant(1)};
    for (int i = 1; i <= e; ++i) {
      xp.push_back(xp.back() * X);
      yp.push_back(yp.back() * Y);
      zp.push_back(zp.back() * Z);
    }
    std::vector<UniPoly> restricted;
    for (const auto& [cx, c1] : comps) {
      UniPoly r;
      for (int j = 0; j <= cx.degree(); ++j) {
        Scalar c = cx.coeff(j);
        if (!c.is_zero()) r += xp[1] * yp[static_cast<std::size_t>(j)] * zp[static_cast<std::size_t>(e - 1 - j)] * c;
      }
      for (int j = 0; j <= c1.degree(); ++j) {
        Scalar c = c1.coeff(j);
        if (!c.is_zero()) r += yp[static_cast<std::size_t>(j)] * zp[static_cast<std::size_t>(e - j)] * c;
      }
      restricted.push_back(std::move(r));
    }
    int at_infinity = e;
    for (const auto& r : restricted) at_infinity = std::min(at_infinity, e - r.degree());
    int common = poly_gcd(std::span<const UniPoly>(restricted)).degree() + at_infinity;
    best = std::max(best, e - common);
  }
  return best;
}

}  // namespace jonq::testing
