#include "fox/linalg.hpp"

#include <algorithm>

namespace fox {

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Echelon Echelon::identity(int columns) {
  Echelon e(columns);
  for (int i = 0; i < columns; ++i) {
    RVector row(columns);
    row[i] = 1;
    e.rows_.push_back(std::move(row));
    e.pivots_.push_back(i);
  }
  return e;
}

RVector Echelon::reduce(RVector v) const {
  if (static_cast<int>(v.size()) != columns_) throw MismatchError("vector length does not match echelon width");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational c = v[pivots_[r]];
    if (c == 0) continue;
    const RVector& row = rows_[r];
    for (int j = pivots_[r]; j < columns_; ++j)
      if (row[j] != 0) v[j] -= c * row[j];
  }
  return v;
}

bool Echelon::contains(const RVector& v) const { return is_zero(reduce(v)); }

bool Echelon::insert(const RVector& v) {
  RVector w = reduce(v);
  int p = 0;
  while (p < columns_ && w[p] == 0) ++p;
  if (p == columns_) return false;
  const Rational lead = w[p];
  for (int j = p; j < columns_; ++j) w[j] /= lead;
  // keep the form reduced: clear column p from the existing rows
  for (RVector& row : rows_) {
    const Rational c = row[p];
    if (c == 0) continue;
    for (int j = p; j < columns_; ++j)
      if (w[j] != 0) row[j] -= c * w[j];
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

Echelon sum(const Echelon& a, const Echelon& b) {
  if (a.columns() != b.columns()) throw MismatchError("echelon width mismatch");
  Echelon out = a;
  for (const RVector& r : b.rows()) out.insert(r);
  return out;
}

Echelon intersect(const Echelon& a, const Echelon& b) {
  if (a.columns() != b.columns()) throw MismatchError("echelon width mismatch");
  const int n = a.columns();
  Echelon out(n);
  if (a.rank() == 0 || b.rank() == 0) return out;
  // Zassenhaus: rows (a|a) and (b|0); rows with zero left half give a∩b on the right.
  Echelon z(2 * n);
  for (const RVector& r : a.rows()) {
    RVector v(2 * n);
    std::copy(r.begin(), r.end(), v.begin());
    std::copy(r.begin(), r.end(), v.begin() + n);
    z.insert(v);
  }
  for (const RVector& r : b.rows()) {
    RVector v(2 * n);
    std::copy(r.begin(), r.end(), v.begin());
    z.insert(v);
  }
  for (std::size_t i = 0; i < z.rows().size(); ++i) {
    if (z.pivots()[i] < n) continue;
    const RVector& r = z.rows()[i];
    out.insert(RVector(r.begin() + n, r.end()));
  }
  return out;
}

std::optional<std::vector<RVector>> invert_matrix(const std::vector<RVector>& m) {
  const std::size_t n = m.size();
  std::vector<RVector> a(n, RVector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw MismatchError("matrix is not square");
    std::copy(m[i].begin(), m[i].end(), a[i].begin());
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    const Rational lead = a[col][col];
    for (Rational& x : a[col]) x /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational c = a[r][col];
      for (std::size_t j = col; j < 2 * n; ++j)
        if (a[col][j] != 0) a[r][j] -= c * a[col][j];
    }
  }
  std::vector<RVector> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i].assign(a[i].begin() + n, a[i].end());
  return inv;
}

RVector row_times(const RVector& v, const std::vector<RVector>& m) {
  if (v.size() != m.size()) throw MismatchError("row vector length mismatch");
  RVector out(m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (m[i][j] != 0) out[j] += v[i] * m[i][j];
  }
  return out;
}

}  // namespace fox
