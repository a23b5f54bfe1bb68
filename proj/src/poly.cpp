#include "jonq/poly.hpp"

#include <algorithm>
#include <sstream>

#include "jonq/errors.hpp"

namespace jonq {

UniPoly::UniPoly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly(std::vector<Scalar>{c}); }

UniPoly UniPoly::monomial(const Scalar& c, int k) {
  if (c.is_zero()) return {};
  std::vector<Scalar> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Scalar(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

const Scalar& UniPoly::leading() const {
  if (is_zero()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

bool UniPoly::is_rational() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Scalar& c) { return c.is_rational(); });
}

std::optional<Integer> UniPoly::radicand() const {
  for (const auto& c : coeffs_) {
    if (auto d = c.radicand()) return d;
  }
  return std::nullopt;
}

Scalar UniPoly::evaluate(const Scalar& at) const {
  Scalar acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Scalar> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d[i - 1] = coeffs_[i] * Scalar(static_cast<long>(i));
  }
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  UniPoly r = *this;
  r *= leading().inverse();
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UniPoly operator*(const UniPoly& l, const UniPoly& r) {
  if (l.is_zero() || r.is_zero()) return {};
  std::vector<Scalar> out(l.coeffs_.size() + r.coeffs_.size() - 1);
  for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
    if (l.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < r.coeffs_.size(); ++j) {
      out[i + j].add_mul(l.coeffs_[i], r.coeffs_[j]);
    }
  }
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

DivRem divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Scalar> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t nb = bc.size();
  const bool monic = b.leading().is_one();
  const Scalar inv_lead = monic ? Scalar(1) : b.leading().inverse();
  std::vector<Scalar> quot(rem.size() - nb + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Scalar q = rem[k + nb - 1];
    if (!monic) q *= inv_lead;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < nb; ++j) rem[k + j].sub_mul(q, bc[j]);
    quot[k] = std::move(q);
  }
  rem.resize(nb - 1);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

bool divides(const UniPoly& d, const UniPoly& a) { return divrem(a, d).remainder.is_zero(); }

UniPoly pow(const UniPoly& p, int n) {
  if (n < 0) throw DomainError("negative polynomial power");
  UniPoly result = UniPoly::constant(1);
  UniPoly base = p;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

UniPoly poly_gcd(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  UniPoly a = p.degree() >= q.degree() ? p : q;
  UniPoly b = p.degree() >= q.degree() ? q : p;
  while (!b.is_zero()) {
    if (b.is_constant()) return UniPoly::constant(1);
    UniPoly r = divrem(a, b).remainder.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

UniPoly poly_gcd(std::span<const UniPoly> ps) {
  std::vector<const UniPoly*> order;
  for (const auto& p : ps) {
    if (!p.is_zero()) order.push_back(&p);
  }
  if (order.empty()) throw DomainError("gcd of zero polynomials is undefined");
  std::sort(order.begin(), order.end(),
            [](const UniPoly* l, const UniPoly* r) { return l->degree() < r->degree(); });
  UniPoly g = order.front()->monic();
  for (std::size_t i = 1; i < order.size() && !g.is_one(); ++i) g = poly_gcd(g, *order[i]);
  return g;
}

UniPoly poly_lcm(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  return exact_div(p * q, poly_gcd(p, q)).monic();
}

Rational content(const UniPoly& p) {
  if (!p.is_rational()) throw DomainError("content of a polynomial with irrational coefficients");
  Integer num = 0;
  Integer den = 1;
  for (const auto& c : p.coeffs()) {
    const Rational& q = c.rational_part();
    if (sgn(q) == 0) continue;
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

UniPoly primitive_part(const UniPoly& p) {
  if (p.is_zero()) return p;
  return p * Scalar(Rational(1 / content(p)));
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (p.is_constant()) return out;
  UniPoly f = p.monic();
  UniPoly df = f.derivative();
  UniPoly a = poly_gcd(f, df);
  UniPoly b = exact_div(f, a);
  UniPoly c = exact_div(df, a);
  UniPoly d = c - b.derivative();
  for (int i = 1; !b.is_constant(); ++i) {
    UniPoly ai = d.is_zero() ? b.monic() : poly_gcd(b, d);
    b = exact_div(b, ai);
    if (d.is_zero()) {
      c = UniPoly();
    } else {
      c = exact_div(d, ai);
    }
    d = c - b.derivative();
    if (!ai.is_constant()) out.push_back({ai, i});
  }
  return out;
}

std::optional<PolySqrt> poly_sqrt(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("poly_sqrt of the zero polynomial");
  UniPoly h = UniPoly::constant(1);
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    if (mult % 2 != 0) return std::nullopt;
    h = h * pow(factor, mult / 2);
  }
  return PolySqrt{p.leading(), h};
}

MoebiusSubstitution compose_with_moebius(const UniPoly& p, const std::array<Scalar, 4>& h) {
  const auto& [a, b, c, d] = h;
  if ((a * d - b * c).is_zero()) throw DomainError("singular Moebius substitution");
  UniPoly num_lin{b, a};
  UniPoly den_lin{d, c};
  if (p.is_zero()) return {UniPoly(), 0, den_lin};
  const int n = p.degree();
  // Horner in the homogeneous pair (num_lin : den_lin).
  UniPoly acc = UniPoly::constant(p.leading());
  UniPoly den_pow = UniPoly::constant(1);
  for (int i = n - 1; i >= 0; --i) {
    den_pow = den_pow * den_lin;
    acc = acc * num_lin + UniPoly::constant(p.coeff(i)) * den_pow;
  }
  return {acc, n, den_lin};
}

namespace {

void append_term(std::ostringstream& os, const Scalar& c, int k, const std::string& var,
                 bool first) {
  std::string mono;
  if (k == 1) {
    mono = var;
  } else if (k > 1) {
    mono = var + "^" + std::to_string(k);
  }
  if (!c.is_rational()) {
    if (!first) os << "+";
    if (mono.empty()) {
      os << "(" << c.str() << ")";
    } else {
      os << "(" << c.str() << ")*" << mono;
    }
    return;
  }
  const Rational& q = c.rational_part();
  if (sgn(q) < 0) {
    os << "-";
  } else if (!first) {
    os << "+";
  }
  Rational mag = abs(q);
  if (mono.empty()) {
    os << mag.get_str();
  } else if (mag == 1) {
    os << mono;
  } else {
    os << mag.get_str() << "*" << mono;
  }
}

}  // namespace

std::string to_string(const UniPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  if (p.is_constant() && !p.leading().is_rational()) return p.leading().str();
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Scalar c = p.coeff(k);
    if (c.is_zero()) continue;
    append_term(os, c, k, var, first);
    first = false;
  }
  return os.str();
}

RatFunc::RatFunc(UniPoly num, UniPoly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = UniPoly();
    den_ = UniPoly::constant(1);
    return;
  }
  UniPoly g = poly_gcd(num, den);
  if (!g.is_one()) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Scalar lead = den.leading();
  if (!lead.is_one()) {
    Scalar inv = lead.inverse();
    num *= inv;
    den *= inv;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

int RatFunc::height() const {
  return std::max({num_.is_zero() ? 0 : num_.degree(), den_.degree(), 0});
}

std::string to_string(const RatFunc& r, const std::string& var) {
  if (r.den().is_one()) return to_string(r.num(), var);
  return "(" + to_string(r.num(), var) + ")/(" + to_string(r.den(), var) + ")";
}

}  // namespace jonq
