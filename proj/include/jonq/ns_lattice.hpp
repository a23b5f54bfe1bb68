#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jonq {

/// Class in the blow-up lattice, coordinates in the basis (l, e_0, ..., e_{2d-2}).
using NSVector = std::vector<std::int64_t>;

/// Pushforward of a degree-d Jonquieres map on the blow-up lattice. Column j is
/// the image of basis vector j.
class NSMatrix {
 public:
  explicit NSMatrix(int d);

  int degree() const { return d_; }
  int size() const { return 2 * d_; }
  std::int64_t at(int row, int col) const { return m_[static_cast<std::size_t>(row * size() + col)]; }
  NSVector column(int j) const;
  NSVector apply(const NSVector& v) const;

 private:
  int d_;
  std::vector<std::int64_t> m_;
};

/// Columns l -> d l - (d-1) e_0 - sum e_i, e_0 -> (d-1) l - (d-2) e_0 - sum e_i,
/// e_i -> l - e_0 - e_i.
NSMatrix ns_pushforward(int d);

/// u_0 v_0 - sum_{i>=1} u_i v_i
std::int64_t lorentzian_product(const NSVector& u, const NSVector& v);

/// (-3, 1, ..., 1)
NSVector canonical_class(int d);

bool preserves_lorentzian_form(const NSMatrix& m);
bool fixes_canonical_class(const NSMatrix& m);

/// sum m = 3(d-1), sum m^2 = d^2 - 1, m_1 + m_2 + m_3 >= d + 1. Multiplicities
/// must be sorted in descending order.
bool homaloidal_check(int d, const std::vector<int>& multiplicities);

/// (d-1, 1, ..., 1) with 2d-2 ones.
std::vector<int> jonquieres_profile(int d);

std::string to_string(const NSMatrix& m);

}  // namespace jonq
