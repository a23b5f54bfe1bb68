#include "jonq/scalar.hpp"

#include <sstream>

#include "jonq/errors.hpp"

namespace jonq {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Scalar Scalar::quadratic(const Rational& a, const Rational& b, const Integer& d) {
  if (d == 0 || d == 1 || (d > 0 && mpz_perfect_square_p(d.get_mpz_t()))) {
    throw DomainError("quadratic extension radicand must be a non-square, got " +
                      d.get_str());
  }
  auto [r, squarefree] = square_and_squarefree(d);
  Scalar s(a);
  if (squarefree == 1) {
    s += Scalar(Rational(b * Rational(r)));
    return s;
  }
  Rational nb = b * Rational(r);
  nb.canonicalize();
  s.ext_ = Extension{std::move(nb), std::move(squarefree)};
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (ext_ && sgn(ext_->b) == 0) ext_.reset();
}

const Integer* Scalar::common_radicand(const Scalar& o) const {
  if (ext_ && o.ext_) {
    if (ext_->d != o.ext_->d) {
      throw DomainError("incompatible quadratic extensions sqrt(" + ext_->d.get_str() +
                        ") and sqrt(" + o.ext_->d.get_str() + ")");
    }
    return &ext_->d;
  }
  if (ext_) return &ext_->d;
  if (o.ext_) return &o.ext_->d;
  return nullptr;
}

Scalar Scalar::conjugate() const {
  Scalar s = *this;
  if (s.ext_) s.ext_->b = -s.ext_->b;
  return s;
}

Rational Scalar::norm() const {
  Rational n = a_ * a_;
  if (ext_) n -= ext_->b * ext_->b * Rational(ext_->d);
  return n;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  if (!ext_) return Scalar(Rational(1 / a_));
  Rational n = norm();
  Scalar s(Rational(a_ / n));
  s.ext_ = Extension{Rational(-ext_->b / n), ext_->d};
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  a_ += o.a_;
  if (!ext_ && !o.ext_) return *this;
  const Integer* d = common_radicand(o);
  if (!ext_) ext_ = Extension{Rational(0), *d};
  if (o.ext_) ext_->b += o.ext_->b;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  a_ -= o.a_;
  if (!ext_ && !o.ext_) return *this;
  const Integer* d = common_radicand(o);
  if (!ext_) ext_ = Extension{Rational(0), *d};
  if (o.ext_) ext_->b -= o.ext_->b;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!ext_ && !o.ext_) {
    a_ *= o.a_;
    return *this;
  }
  const Integer* d = common_radicand(o);
  Rational a2 = o.a_;
  Rational b1 = ext_ ? ext_->b : Rational(0);
  Rational b2 = o.ext_ ? o.ext_->b : Rational(0);
  Rational na = a_ * a2 + b1 * b2 * Rational(*d);
  Rational nb = a_ * b2 + b1 * a2;
  Integer dd = *d;
  a_ = std::move(na);
  ext_ = Extension{std::move(nb), std::move(dd)};
  normalize();
  return *this;
}

namespace {
thread_local mpq_class scratch;
}

void Scalar::add_mul(const Scalar& x, const Scalar& y) {
  if (!ext_ && !x.ext_ && !y.ext_) {
    mpq_mul(scratch.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
    mpq_add(a_.get_mpq_t(), a_.get_mpq_t(), scratch.get_mpq_t());
    return;
  }
  *this += x * y;
}

void Scalar::sub_mul(const Scalar& x, const Scalar& y) {
  if (!ext_ && !x.ext_ && !y.ext_) {
    mpq_mul(scratch.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
    mpq_sub(a_.get_mpq_t(), a_.get_mpq_t(), scratch.get_mpq_t());
    return;
  }
  *this -= x * y;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.a_ = -s.a_;
  if (s.ext_) s.ext_->b = -s.ext_->b;
  return s;
}

bool operator==(const Scalar& l, const Scalar& r) {
  if (l.a_ != r.a_) return false;
  if (l.ext_.has_value() != r.ext_.has_value()) return false;
  if (!l.ext_) return true;
  return l.ext_->b == r.ext_->b && l.ext_->d == r.ext_->d;
}

std::string Scalar::str() const {
  if (!ext_) return a_.get_str();
  std::ostringstream os;
  const Rational& b = ext_->b;
  std::string root = "sqrt(" + ext_->d.get_str() + ")";
  bool has_a = sgn(a_) != 0;
  if (has_a) os << a_.get_str();
  if (b == 1) {
    os << (has_a ? "+" : "") << root;
  } else if (b == -1) {
    os << "-" << root;
  } else {
    if (has_a && sgn(b) > 0) os << "+";
    os << b.get_str() << "*" << root;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

std::pair<Integer, Integer> square_and_squarefree(const Integer& n) {
  if (n == 0) throw DomainError("squarefree part of zero");
  // Trial division to kBound, then the cofactor m has only prime factors
  // > kBound. For m < kBound^3 a non-square m is a prime or a product of two
  // distinct primes, hence squarefree.
  constexpr unsigned long kBound = 20000;
  Integer m = abs(n);
  Integer square_root = 1;
  Integer squarefree = sgn(n) < 0 ? -1 : 1;
  for (unsigned long p = 2; p <= kBound && m > 1; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) square_root *= p;
    if (e % 2 == 1) squarefree *= p;
  }
  if (m > 1) {
    Integer bound3 = Integer(kBound) * kBound * kBound;
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      square_root *= r;
    } else if (m < bound3 || mpz_probab_prime_p(m.get_mpz_t(), 40) > 0) {
      squarefree *= m;
    } else {
      throw DomainError("cannot certify the squarefree part of " + n.get_str());
    }
  }
  return {square_root, squarefree};
}

RationalSqrt scalar_sqrt(const Rational& c) {
  if (sgn(c) == 0) throw DomainError("scalar_sqrt of zero");
  // sqrt(p/q) = sqrt(p*q)/q
  Integer pq = c.get_num() * c.get_den();
  auto [r, s] = square_and_squarefree(pq);
  Rational cofactor(r, c.get_den());
  cofactor.canonicalize();
  if (s == 1) return {cofactor, std::nullopt};
  return {cofactor, s};
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace

std::optional<Scalar> sqrt_in_field(const Scalar& c, const std::optional<Integer>& d) {
  if (c.is_rational()) {
    const Rational& a = c.rational_part();
    if (auto r = rational_sqrt(a)) return Scalar(*r);
    if (!d) return std::nullopt;
    // a = d * q^2  =>  sqrt(a) = q*sqrt(d)
    Rational ratio = a / Rational(*d);
    if (auto q = rational_sqrt(ratio)) return Scalar::quadratic(0, *q, *d);
    return std::nullopt;
  }
  if (d && *c.radicand() != *d) return std::nullopt;
  // (p + q sqrt(d))^2 = a + b sqrt(d)  <=>  p^2 + d q^2 = a, 2pq = b.
  const Rational a = c.rational_part();
  const Rational b = c.irrational_part();
  const Integer rad = *c.radicand();
  auto n = rational_sqrt(c.norm());
  if (!n) return std::nullopt;
  for (int sign : {1, -1}) {
    Rational p2 = (a + sign * *n) / 2;
    auto p = rational_sqrt(p2);
    if (!p || sgn(*p) == 0) continue;
    Rational q = b / (2 * *p);
    Scalar cand = Scalar::quadratic(*p, q, rad);
    if (cand * cand == c) return cand;
  }
  return std::nullopt;
}

Scalar field_sqrt(const Scalar& c, const std::optional<Integer>& context) {
  if (c.is_zero()) return Scalar(0);
  if (auto in = sqrt_in_field(c, context ? context : c.radicand())) return *in;
  if (!c.is_rational()) {
    throw DomainError("square root of " + c.str() + " needs a nested quadratic extension");
  }
  RationalSqrt s = scalar_sqrt(c.rational_part());
  if (!s.radicand) return Scalar(s.cofactor);
  if (context && *context != *s.radicand) {
    throw DomainError("square root of " + c.str() + " lies outside Q(sqrt(" +
                      context->get_str() + "))");
  }
  return Scalar::quadratic(0, s.cofactor, *s.radicand);
}

}  // namespace jonq
