#pragma once

#include <array>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jonq/scalar.hpp"

namespace jonq {

/// Degree reported for the zero polynomial. It is far below any real degree
/// so that max() over degrees ignores zero entries, and it must never be fed
/// into further arithmetic.
inline constexpr int kMinusInfinity = std::numeric_limits<int>::min() / 4;

/// Dense univariate polynomial over Q or Q(sqrt(d)), coefficients stored low
/// to high. The leading coefficient is nonzero; the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs);
  UniPoly(std::initializer_list<Scalar> coeffs) : UniPoly(std::vector<Scalar>(coeffs)) {}

  static UniPoly constant(const Scalar& c);
  static UniPoly monomial(const Scalar& c, int k);
  /// The polynomial variable itself.
  static UniPoly var() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  int degree() const { return is_zero() ? kMinusInfinity : static_cast<int>(coeffs_.size()) - 1; }

  Scalar coeff(int i) const;
  const Scalar& leading() const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  bool is_rational() const;
  /// Radicand of the quadratic field holding the coefficients, if any.
  std::optional<Integer> radicand() const;

  Scalar evaluate(const Scalar& at) const;
  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Scalar& c);
  friend UniPoly operator+(UniPoly l, const UniPoly& r) { return l += r; }
  friend UniPoly operator-(UniPoly l, const UniPoly& r) { return l -= r; }
  friend UniPoly operator*(const UniPoly& l, const UniPoly& r);
  friend UniPoly operator*(UniPoly l, const Scalar& c) { return l *= c; }
  friend UniPoly operator*(const Scalar& c, UniPoly r) { return r *= c; }
  UniPoly operator-() const;

  friend bool operator==(const UniPoly& l, const UniPoly& r) { return l.coeffs_ == r.coeffs_; }
  friend bool operator!=(const UniPoly& l, const UniPoly& r) { return !(l == r); }

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

struct DivRem {
  UniPoly quotient;
  UniPoly remainder;
};

DivRem divrem(const UniPoly& a, const UniPoly& b);
/// a / b when b divides a; throws DomainError otherwise.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
bool divides(const UniPoly& d, const UniPoly& a);
UniPoly pow(const UniPoly& p, int n);

/// Monic gcd. gcd(p, 0) = monic(p); both zero is a DomainError.
UniPoly poly_gcd(const UniPoly& p, const UniPoly& q);
/// Monic gcd of a list; zero entries are skipped. Processes entries in
/// increasing degree order and stops early at 1.
UniPoly poly_gcd(std::span<const UniPoly> ps);
UniPoly poly_lcm(const UniPoly& p, const UniPoly& q);

/// Rational content (gcd of numerators over lcm of denominators, positive) of
/// a polynomial with rational coefficients.
Rational content(const UniPoly& p);
/// p / content(p): integer coefficients with gcd 1.
UniPoly primitive_part(const UniPoly& p);

struct SquarefreeFactor {
  UniPoly factor;  // monic, squarefree
  int multiplicity;
  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

/// Yun's algorithm. p = lc(p) * prod factor_i^multiplicity_i with pairwise
/// coprime monic squarefree factors, in increasing multiplicity.
std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& p);

struct PolySqrt {
  Scalar leading;  // c
  UniPoly root;    // h, monic
};

/// (c, h) with p = c * h^2 and h monic, iff p is a square in C[y].
std::optional<PolySqrt> poly_sqrt(const UniPoly& p);

struct MoebiusSubstitution {
  UniPoly numerator;
  int denominator_power;
  UniPoly denominator_linear;  // c*y + d
};

/// p((a*y + b)/(c*y + d)) = numerator / (c*y + d)^deg(p).
MoebiusSubstitution compose_with_moebius(const UniPoly& p, const std::array<Scalar, 4>& h);

/// Human-readable form, highest degree first: "y^2+2*y", "1/2*y-3",
/// "(1+sqrt(2))*y". For rational coefficients this is also the canonical
/// serialization syntax.
std::string to_string(const UniPoly& p, const std::string& var = "y");

/// Reduced quotient num/den: den monic and nonzero, gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(UniPoly::constant(1)) {}
  RatFunc(UniPoly num, UniPoly den);
  explicit RatFunc(UniPoly num) : RatFunc(std::move(num), UniPoly::constant(1)) {}

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// max(deg num, deg den); 0 for constants.
  int height() const;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  UniPoly num_;
  UniPoly den_;
};

std::string to_string(const RatFunc& r, const std::string& var = "y");

}  // namespace jonq
