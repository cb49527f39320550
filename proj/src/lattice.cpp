#include "fox/lattice.hpp"

#include <algorithm>

namespace fox {

namespace {

std::size_t first_nonzero(const std::vector<Integer>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return i;
  return v.size();
}

void axpy(std::vector<Integer>& v, const Integer& k, const std::vector<Integer>& r) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= k * r[i];
}

}  // namespace

void IntegerLattice::insert(std::vector<Integer> v) {
  if (v.size() != dim_) throw MismatchError("lattice vector has wrong dimension");
  for (;;) {
    std::size_t c = first_nonzero(v);
    if (c == dim_) return;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    auto idx = static_cast<std::size_t>(it - pivots_.begin());
    if (it == pivots_.end() || *it != c) {
      if (v[c] < 0)
        for (auto& x : v) x = -x;
      rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(v));
      pivots_.insert(it, c);
      return;
    }
    std::vector<Integer>& r = rows_[idx];
    if (v[c] % r[c] == 0) {
      axpy(v, v[c] / r[c], r);
      continue;
    }
    // Unimodular 2x2 step: (r, v) -> (a r + b v, (r_c/g) v - (v_c/g) r).
    Integer g, a, b;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
    Integer rc = r[c] / g, vc = v[c] / g;
    std::vector<Integer> nr(dim_), nv(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      nr[i] = a * r[i] + b * v[i];
      nv[i] = rc * v[i] - vc * r[i];
    }
    r = std::move(nr);
    v = std::move(nv);
  }
}

bool IntegerLattice::contains(std::vector<Integer> v) const {
  if (v.size() != dim_) throw MismatchError("lattice vector has wrong dimension");
  for (;;) {
    std::size_t c = first_nonzero(v);
    if (c == dim_) return true;
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    if (it == pivots_.end() || *it != c) return false;
    const auto& r = rows_[static_cast<std::size_t>(it - pivots_.begin())];
    if (v[c] % r[c] != 0) return false;
    axpy(v, v[c] / r[c], r);
  }
}

}  // namespace fox
