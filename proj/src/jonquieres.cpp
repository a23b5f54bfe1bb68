#include "jonq/jonquieres.hpp"

#include <algorithm>

#include "jonq/errors.hpp"

namespace jonq {

// ---------------------------------------------------------------------------
// Moebius

Moebius::Moebius(Scalar a, Scalar b, Scalar c, Scalar d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (det().is_zero()) throw DomainError("singular base action (ad - bc = 0)");
  auto first = std::find_if(m_.begin(), m_.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (!first->is_one()) {
    Scalar inv = first->inverse();
    for (auto& s : m_) s *= inv;
  }
}

bool Moebius::is_identity() const {
  return m_[0].is_one() && m_[1].is_zero() && m_[2].is_zero() && m_[3].is_one();
}

Moebius Moebius::inverse() const { return Moebius(m_[3], -m_[1], -m_[2], m_[0]); }

std::optional<Scalar> Moebius::apply(const Scalar& y) const {
  Scalar den = m_[2] * y + m_[3];
  if (den.is_zero()) return std::nullopt;
  return (m_[0] * y + m_[1]) / den;
}

Moebius operator*(const Moebius& l, const Moebius& r) {
  const auto& x = l.m_;
  const auto& z = r.m_;
  return Moebius(x[0] * z[0] + x[1] * z[2], x[0] * z[1] + x[1] * z[3],
                 x[2] * z[0] + x[3] * z[2], x[2] * z[1] + x[3] * z[3]);
}

std::optional<int> moebius_order(const Moebius& h, int n_max) {
  Moebius p = h;
  for (int l = 1; l <= n_max; ++l) {
    if (p.is_identity()) return l;
    p = p * h;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// FiberMatrix

FiberMatrix::FiberMatrix(UniPoly a, UniPoly b, UniPoly c, UniPoly d) {
  std::array<UniPoly, 4> e{std::move(a), std::move(b), std::move(c), std::move(d)};
  UniPoly det = e[0] * e[3] - e[1] * e[2];
  if (det.is_zero()) throw DomainError("singular fiber matrix (AD - BC = 0): not birational along fibers");
  e_ = normalize(std::move(e), det);
}

FiberMatrix FiberMatrix::identity() {
  return FiberMatrix(Normalized{}, {UniPoly::constant(1), UniPoly(), UniPoly(), UniPoly::constant(1)});
}

FiberMatrix FiberMatrix::from_entries(std::array<UniPoly, 4> e, const UniPoly& content_bound) {
  return FiberMatrix(Normalized{}, normalize(std::move(e), content_bound));
}

std::array<UniPoly, 4> FiberMatrix::normalize(std::array<UniPoly, 4> e, const UniPoly& content_bound) {
  // content | content_bound (nonzero), so starting the gcd chain there keeps
  // every Euclidean step at the bound's degree.
  UniPoly g = content_bound.is_zero() ? UniPoly() : content_bound.monic();
  for (const auto& x : e) {
    if (x.is_zero()) continue;
    if (g.is_one()) break;
    g = g.is_zero() ? x.monic() : poly_gcd(g, x);
  }
  if (!g.is_one()) {
    for (auto& x : e) {
      if (!x.is_zero()) x = exact_div(x, g);
    }
  }
  auto first = std::find_if(e.begin(), e.end(), [](const UniPoly& p) { return !p.is_zero(); });
  if (!first->leading().is_one()) {
    Scalar inv = first->leading().inverse();
    for (auto& x : e) x *= inv;
  }
  return e;
}

UniPoly FiberMatrix::discriminant() const {
  UniPoly t = trace();
  return t * t - det() * Scalar(4);
}

bool FiberMatrix::is_rational() const {
  return std::all_of(e_.begin(), e_.end(), [](const UniPoly& p) { return p.is_rational(); });
}

std::optional<Integer> FiberMatrix::radicand() const {
  for (const auto& p : e_) {
    if (auto d = p.radicand()) return d;
  }
  return std::nullopt;
}

int FiberMatrix::max_degree() const {
  int n = kMinusInfinity;
  for (const auto& p : e_) n = std::max(n, p.degree());
  return n;
}

// ---------------------------------------------------------------------------
// JonquieresMap

bool JonquieresMap::is_rational() const {
  return m_.is_rational() &&
         std::all_of(h_.entries().begin(), h_.entries().end(),
                     [](const Scalar& s) { return s.is_rational(); });
}

std::optional<std::pair<Scalar, Scalar>> JonquieresMap::apply(const Scalar& x, const Scalar& y) const {
  auto y2 = h_.apply(y);
  if (!y2) return std::nullopt;
  Scalar num = m_.a().evaluate(y) * x + m_.b().evaluate(y);
  Scalar den = m_.c().evaluate(y) * x + m_.d().evaluate(y);
  if (den.is_zero()) return std::nullopt;
  return std::pair{num / den, *y2};
}

std::array<UniPoly, 4> substitute_base(const FiberMatrix& m, const Moebius& h) {
  if (h.is_identity()) return m.entries();
  const int n = m.max_degree();
  UniPoly den_lin{h.d(), h.c()};
  std::vector<UniPoly> den_pows{UniPoly::constant(1)};
  for (int i = 1; i <= n; ++i) den_pows.push_back(den_pows.back() * den_lin);
  std::array<UniPoly, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const UniPoly& e = m.entries()[i];
    if (e.is_zero()) continue;
    MoebiusSubstitution s = compose_with_moebius(e, h.entries());
    out[i] = s.numerator * den_pows[static_cast<std::size_t>(n - s.denominator_power)];
  }
  return out;
}

JonquieresMap compose(const JonquieresMap& f, const JonquieresMap& g) {
  std::array<UniPoly, 4> l = substitute_base(f.fiber(), g.base());
  const auto& r = g.fiber().entries();
  std::array<UniPoly, 4> p{l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3],
                           l[2] * r[0] + l[3] * r[2], l[2] * r[1] + l[3] * r[3]};
  // adj(L) * (L R) = det(L) R and R is primitive, so content(L R) | det(L).
  UniPoly det_l = l[0] * l[3] - l[1] * l[2];
  return JonquieresMap(FiberMatrix::from_entries(std::move(p), det_l), f.base() * g.base());
}

JonquieresMap inverse(const JonquieresMap& f) {
  const FiberMatrix& m = f.fiber();
  Moebius hinv = f.base().inverse();
  FiberMatrix adj(m.d(), -m.b(), -m.c(), m.a());
  auto e = substitute_base(adj, hinv);
  return JonquieresMap(FiberMatrix(std::move(e[0]), std::move(e[1]), std::move(e[2]), std::move(e[3])),
                       hinv);
}

JonquieresMap iterate(const JonquieresMap& f, int k) {
  if (k < 0) throw DomainError("iterate: negative exponent");
  JonquieresMap r = JonquieresMap::identity();
  for (int i = 0; i < k; ++i) r = compose(f, r);
  return r;
}

int plane_degree(const JonquieresMap& f) {
  // With x = X/Z, y = Y/Z the map is (Num*L2 : L1*Den : L2*Den), all of degree
  // N + 1, where Num = X*A^h*Z^(N-1-deg A) + B^h*Z^(N-deg B), Den likewise from
  // C, D, and L1 = aY + bZ, L2 = cY + dZ. Since gcd(L1, L2) = 1 the common
  // factor is gcd(Num*L2, Den). Both are linear in X with coefficient
  // determinant L2 * Z^k * det(M)^h != 0, so they share no factor involving X
  // and the gcd is the gcd of the four binary forms
  //   A*l2 (deg N), B*l2 (deg N+1), C (deg N-1), D (deg N).
  // A binary form of degree n with dehomogenization p is Z^(n - deg p) * p^h.
  const FiberMatrix& m = f.fiber();
  const Moebius& h = f.base();
  const int l2_deg = h.c().is_zero() ? 0 : 1;
  const int da = m.a().degree(), db = m.b().degree(), dc = m.c().degree(), dd = m.d().degree();
  const int n = std::max({da + 1, db, dc + 1, dd});
  int z_val = n + 1;
  auto consider = [&](const UniPoly& p, int extra, int form_deg) {
    if (!p.is_zero()) z_val = std::min(z_val, form_deg - (p.degree() + extra));
  };
  consider(m.a(), l2_deg, n);
  consider(m.b(), l2_deg, n + 1);
  consider(m.c(), 0, n - 1);
  consider(m.d(), 0, n);
  // gcd(A l2, B l2, C, D) = gcd(l2, C, D) because gcd(A, B, C, D) = 1.
  int common = 0;
  if (l2_deg == 1) {
    UniPoly l2{h.d(), h.c()};
    std::array<UniPoly, 3> parts{l2, m.c(), m.d()};
    common = poly_gcd(parts).degree();
  }
  return n + 1 - z_val - common;
}

int base_point_count(const JonquieresMap& f) {
  int d = plane_degree(f);
  return d == 1 ? 0 : 2 * d - 1;
}

RatFunc baum_bott(const JonquieresMap& f) {
  if (!f.in_j0()) throw DomainError("Baum-Bott index is defined for maps in J0 (trivial base action)");
  UniPoly t = f.fiber().trace();
  return RatFunc(t * t, f.fiber().det());
}

bool is_elliptic_j0(const JonquieresMap& f) { return baum_bott(f).is_constant(); }

std::string to_string(Subgroup s) {
  switch (s) {
    case Subgroup::J0: return "J0";
    case Subgroup::Ja: return "Ja";
    case Subgroup::Jm: return "Jm";
    case Subgroup::JF: return "JF-shape";
    case Subgroup::General: return "general";
  }
  return "general";
}

Subgroup subgroup_recognize(const JonquieresMap& f) {
  if (!f.in_j0()) return Subgroup::General;
  const FiberMatrix& m = f.fiber();
  if (m.b().is_zero() && m.c().is_zero()) return Subgroup::Jm;
  if (m.c().is_zero() && m.a() == m.d()) return Subgroup::Ja;
  if (m.a() == m.d() && !m.c().is_zero() && m.c().is_constant()) return Subgroup::JF;
  return Subgroup::J0;
}

}  // namespace jonq
