#pragma once

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>

namespace jonq {

using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Exact element a + b*sqrt(d) of Q or of a quadratic field Q(sqrt(d)).
///
/// `d` is a squarefree integer different from 0 and 1. An element whose
/// irrational part vanishes is always stored as a plain rational, so two
/// scalars are equal iff their stored fields are equal. Mixing elements of
/// two different quadratic fields throws DomainError.
class Scalar {
 public:
  Scalar() = default;
  // Rationals built from (num, den) by hand may be unreduced; equality relies
  // on the canonical form.
  Scalar(const Rational& a) : a_(a) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(Rational&& a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  Scalar(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)

  /// a + b*sqrt(d). Rejects d = 0, d = 1 and perfect squares; the caller
  /// provides a squarefree d (see scalar_sqrt).
  static Scalar quadratic(const Rational& a, const Rational& b, const Integer& d);

  bool is_zero() const { return !ext_ && sgn(a_) == 0; }
  bool is_one() const { return !ext_ && a_ == 1; }
  bool is_rational() const { return !ext_.has_value(); }

  const Rational& rational_part() const { return a_; }
  Rational irrational_part() const { return ext_ ? ext_->b : Rational(0); }
  /// Radicand of the field this element lives in, if irrational.
  std::optional<Integer> radicand() const {
    return ext_ ? std::optional<Integer>(ext_->d) : std::nullopt;
  }

  Scalar conjugate() const;
  /// Field norm a^2 - b^2 d (a^2 for rationals).
  Rational norm() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }
  /// *this += x * y without a temporary in the rational case.
  void add_mul(const Scalar& x, const Scalar& y);
  void sub_mul(const Scalar& x, const Scalar& y);

  friend Scalar operator+(Scalar l, const Scalar& r) { return l += r; }
  friend Scalar operator-(Scalar l, const Scalar& r) { return l -= r; }
  friend Scalar operator*(Scalar l, const Scalar& r) { return l *= r; }
  friend Scalar operator/(Scalar l, const Scalar& r) { return l /= r; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& l, const Scalar& r);
  friend bool operator!=(const Scalar& l, const Scalar& r) { return !(l == r); }

  std::string str() const;

 private:
  struct Extension {
    Rational b;
    Integer d;
  };

  void normalize();
  const Integer* common_radicand(const Scalar& o) const;

  Rational a_;
  std::optional<Extension> ext_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// sqrt(c) = cofactor * sqrt(radicand); radicand absent when c is a rational
/// square. The radicand is squarefree, != 0, 1.
struct RationalSqrt {
  Rational cofactor;
  std::optional<Integer> radicand;
};

/// Exact square root of a nonzero rational, as a rational or as a multiple of
/// sqrt(d) for the normalized squarefree d.
RationalSqrt scalar_sqrt(const Rational& c);

/// Squarefree part of a nonzero integer n = r^2 * s (sign kept on s).
/// Throws DomainError when the large cofactor cannot be certified.
std::pair<Integer, Integer> square_and_squarefree(const Integer& n);

/// Square root of c inside Q(sqrt(d)) (or Q when d is absent), if it exists.
std::optional<Scalar> sqrt_in_field(const Scalar& c, const std::optional<Integer>& d);

/// Square root of c, adjoining sqrt of a rational when needed. Throws
/// DomainError if that would require a second, different extension.
Scalar field_sqrt(const Scalar& c, const std::optional<Integer>& context);

}  // namespace jonq
