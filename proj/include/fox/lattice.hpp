#pragma once

#include <vector>

#include "fox/numeric.hpp"

namespace fox {

/// Sublattice of Z^n kept as an integer row echelon basis (Hermite-style:
/// unimodular row operations only, so membership is exact).
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<Integer>>& rows() const { return rows_; }

  void insert(std::vector<Integer> v);
  bool contains(std::vector<Integer> v) const;

 private:
  std::size_t dim_;
  std::vector<std::vector<Integer>> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

}  // namespace fox
