#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "jonq/poly.hpp"
#include "jonq/scalar.hpp"

namespace jonq {

/// Base action y -> (a*y + b)/(c*y + d) as an element of PGL(2).
///
/// Stored normalized: the first nonzero entry in the order (a, b, c, d) is 1,
/// so structural equality is equality of maps.
class Moebius {
 public:
  Moebius(Scalar a, Scalar b, Scalar c, Scalar d);
  static Moebius identity() { return Moebius(1, 0, 0, 1); }
  static Moebius translation(const Scalar& t) { return Moebius(1, t, 0, 1); }

  const Scalar& a() const { return m_[0]; }
  const Scalar& b() const { return m_[1]; }
  const Scalar& c() const { return m_[2]; }
  const Scalar& d() const { return m_[3]; }
  const std::array<Scalar, 4>& entries() const { return m_; }

  bool is_identity() const;
  Scalar det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  Moebius inverse() const;
  /// Image of y, or nullopt at the pole.
  std::optional<Scalar> apply(const Scalar& y) const;

  /// Composition: (l * r)(y) = l(r(y)).
  friend Moebius operator*(const Moebius& l, const Moebius& r);
  friend bool operator==(const Moebius&, const Moebius&) = default;

 private:
  std::array<Scalar, 4> m_;
};

/// Least l <= n_max with h^l the identity in PGL(2), if any.
std::optional<int> moebius_order(const Moebius& h, int n_max = 12);

/// Primitive 2x2 polynomial matrix [[A, B], [C, D]] representing an element of
/// PGL(2, K(y)): AD - BC != 0, gcd(A, B, C, D) = 1, and the first nonzero entry
/// is monic.
class FiberMatrix {
 public:
  FiberMatrix(UniPoly a, UniPoly b, UniPoly c, UniPoly d);
  static FiberMatrix identity();

  /// Normalizes entries known to have a content dividing `content_bound`
  /// (any nonzero multiple of the true content), avoiding a gcd of the large
  /// entries against each other.
  static FiberMatrix from_entries(std::array<UniPoly, 4> e, const UniPoly& content_bound);

  const UniPoly& a() const { return e_[0]; }
  const UniPoly& b() const { return e_[1]; }
  const UniPoly& c() const { return e_[2]; }
  const UniPoly& d() const { return e_[3]; }
  const std::array<UniPoly, 4>& entries() const { return e_; }

  UniPoly trace() const { return e_[0] + e_[3]; }
  UniPoly det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  /// Discriminant of the characteristic polynomial X^2 - Tr X + det.
  UniPoly discriminant() const;
  bool is_rational() const;
  std::optional<Integer> radicand() const;
  /// max entry degree
  int max_degree() const;

  friend bool operator==(const FiberMatrix&, const FiberMatrix&) = default;

 private:
  struct Normalized {};
  FiberMatrix(Normalized, std::array<UniPoly, 4> e) : e_(std::move(e)) {}
  static std::array<UniPoly, 4> normalize(std::array<UniPoly, 4> e, const UniPoly& content_bound);

  std::array<UniPoly, 4> e_;
};

/// (x, y) -> ((A(y) x + B(y)) / (C(y) x + D(y)), h(y)).
///
/// Both parts are kept canonical, so structural equality is map equality.
class JonquieresMap {
 public:
  explicit JonquieresMap(FiberMatrix m, Moebius h = Moebius::identity())
      : m_(std::move(m)), h_(std::move(h)) {}
  static JonquieresMap identity() { return JonquieresMap(FiberMatrix::identity()); }

  const FiberMatrix& fiber() const { return m_; }
  const Moebius& base() const { return h_; }
  bool in_j0() const { return h_.is_identity(); }
  bool is_rational() const;

  /// Image of the point (x, y), or nullopt on the indeterminacy/pole locus.
  std::optional<std::pair<Scalar, Scalar>> apply(const Scalar& x, const Scalar& y) const;

  friend bool operator==(const JonquieresMap&, const JonquieresMap&) = default;

 private:
  FiberMatrix m_;
  Moebius h_;
};

/// Entries of m with y replaced by h(y), multiplied through by the common
/// denominator (c*y + d)^max_degree.
std::array<UniPoly, 4> substitute_base(const FiberMatrix& m, const Moebius& h);

/// f o g
JonquieresMap compose(const JonquieresMap& f, const JonquieresMap& g);
JonquieresMap inverse(const JonquieresMap& f);
JonquieresMap iterate(const JonquieresMap& f, int k);

/// Degree of f as a birational map of P^2 (chart x = X/Z, y = Y/Z).
int plane_degree(const JonquieresMap& f);
/// Number of base-points of a minimal resolution: 0 for automorphisms,
/// 2 deg - 1 otherwise.
int base_point_count(const JonquieresMap& f);

/// Tr(M)^2 / det(M) of a map in J0, reduced.
RatFunc baum_bott(const JonquieresMap& f);
bool is_elliptic_j0(const JonquieresMap& f);

enum class Subgroup { J0, Ja, Jm, JF, General };
std::string to_string(Subgroup s);
Subgroup subgroup_recognize(const JonquieresMap& f);

}  // namespace jonq
