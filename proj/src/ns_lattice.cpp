#include "jonq/ns_lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "jonq/errors.hpp"

namespace jonq {

NSMatrix::NSMatrix(int d) : d_(d) {
  if (d < 2) throw DomainError("ns_pushforward needs d >= 2, got " + std::to_string(d));
  if (d > 1 << 20) throw DomainError("ns_pushforward: d too large");
  const int n = size();
  m_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto set = [&](int r, int c, std::int64_t v) { m_[static_cast<std::size_t>(r * n + c)] = v; };
  set(0, 0, d);
  set(1, 0, -(d - 1));
  set(0, 1, d - 1);
  set(1, 1, -(d - 2));
  for (int i = 2; i < n; ++i) {
    set(i, 0, -1);
    set(i, 1, -1);
    set(0, i, 1);
    set(1, i, -1);
    set(i, i, -1);
  }
}

NSVector NSMatrix::column(int j) const {
  if (j < 0 || j >= size()) throw DomainError("NSMatrix column out of range");
  NSVector c(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) c[static_cast<std::size_t>(i)] = at(i, j);
  return c;
}

NSVector NSMatrix::apply(const NSVector& v) const {
  if (static_cast<int>(v.size()) != size()) throw DomainError("NSVector length does not match the matrix");
  NSVector out(v.size(), 0);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) out[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
  }
  return out;
}

NSMatrix ns_pushforward(int d) { return NSMatrix(d); }

std::int64_t lorentzian_product(const NSVector& u, const NSVector& v) {
  if (u.size() != v.size()) {
    throw DomainError("lorentzian_product: length mismatch (" + std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()) + ")");
  }
  if (u.empty()) return 0;
  std::int64_t acc = u[0] * v[0];
  for (std::size_t i = 1; i < u.size(); ++i) acc -= u[i] * v[i];
  return acc;
}

NSVector canonical_class(int d) {
  if (d < 2) throw DomainError("canonical_class needs d >= 2");
  NSVector k(static_cast<std::size_t>(2 * d), 1);
  k[0] = -3;
  return k;
}

bool preserves_lorentzian_form(const NSMatrix& m) {
  std::vector<NSVector> cols;
  for (int j = 0; j < m.size(); ++j) cols.push_back(m.column(j));
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i; j < m.size(); ++j) {
      std::int64_t expected = i != j ? 0 : (i == 0 ? 1 : -1);
      if (lorentzian_product(cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]) != expected) {
        return false;
      }
    }
  }
  return true;
}

bool fixes_canonical_class(const NSMatrix& m) {
  NSVector k = canonical_class(m.degree());
  return m.apply(k) == k;
}

bool homaloidal_check(int d, const std::vector<int>& multiplicities) {
  if (d < 2) throw DomainError("homaloidal_check needs d >= 2");
  if (!std::is_sorted(multiplicities.begin(), multiplicities.end(), std::greater<>())) {
    throw DomainError("homaloidal_check: multiplicities must be sorted in descending order");
  }
  std::int64_t sum = 0, sum_sq = 0;
  for (int m : multiplicities) {
    sum += m;
    sum_sq += static_cast<std::int64_t>(m) * m;
  }
  const std::int64_t dd = d;
  if (sum != 3 * (dd - 1) || sum_sq != dd * dd - 1) return false;
  std::int64_t top3 = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, multiplicities.size()); ++i) top3 += multiplicities[i];
  return top3 >= dd + 1;
}

std::vector<int> jonquieres_profile(int d) {
  if (d < 2) throw DomainError("jonquieres_profile needs d >= 2");
  std::vector<int> p(static_cast<std::size_t>(2 * d - 1), 1);
  p[0] = d - 1;
  return p;
}

std::string to_string(const NSMatrix& m) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      cells.push_back(std::to_string(m.at(i, j)));
      width = std::max(width, cells.back().size());
    }
  }
  std::ostringstream os;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      const std::string& c = cells[static_cast<std::size_t>(i * m.size() + j)];
      os << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace jonq
