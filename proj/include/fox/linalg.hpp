#pragma once

// Exact row-echelon linear algebra over Q, used per degree by graded subspaces
// and by the PBW coordinate solver.

#include <optional>
#include <vector>

#include "fox/numeric.hpp"

namespace fox {

using RVector = std::vector<Rational>;

/// Row space kept in reduced row-echelon form, rows sorted by pivot column.
class Echelon {
 public:
  explicit Echelon(int columns = 0) : columns_(columns) {}
  /// The whole space Q^n.
  static Echelon identity(int columns);

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<RVector>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// v minus its projection onto the pivot coordinates; zero iff v is in the span.
  RVector reduce(RVector v) const;
  bool contains(const RVector& v) const;
  /// Adds v to the span; returns false if it was already there.
  bool insert(const RVector& v);

  friend bool operator==(const Echelon&, const Echelon&) = default;

 private:
  int columns_;
  std::vector<RVector> rows_;
  std::vector<int> pivots_;
};

bool is_zero(const RVector& v);

/// Row space of a intersected with row space of b.
Echelon intersect(const Echelon& a, const Echelon& b);
Echelon sum(const Echelon& a, const Echelon& b);

/// Inverse of a square matrix given by rows; nullopt if singular.
std::optional<std::vector<RVector>> invert_matrix(const std::vector<RVector>& m);
/// Row vector times matrix.
RVector row_times(const RVector& v, const std::vector<RVector>& m);

}  // namespace fox
