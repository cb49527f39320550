#pragma once

// Ordered bases of F adapted to a chain of subspaces, PBW normal forms in
// U(F) with respect to them, and reduction modulo the ideal N_U.

#include <map>
#include <memory>
#include <vector>

#include "fox/assoc_poly.hpp"
#include "fox/lie_core.hpp"

namespace fox {

enum class Block { a = 0, b = 1, c = 2, d = 3 };
char block_name(Block b);

/// a < b < c < d (ascending) or d < c < b < a (descending).
enum class Orientation { ascending, descending };

struct AdaptedBasis {
  int rank = 0;
  int cutoff = 0;
  Orientation orientation = Orientation::ascending;
  /// Homogeneous elements in PBW order.
  std::vector<LieElt> elements;
  std::vector<Block> blocks;
  std::vector<int> degrees;

  std::size_t size() const { return elements.size(); }
  std::vector<int> positions(Block b) const;
};

/// Basis of F up to `cutoff`: a spans A; a,b span B; a,b,c span C; d completes.
/// When `c_source` is given the c-block is drawn from it (it must satisfy
/// B + c_source = C), as for F_K∩N ⊆ F_K ⊆ F_K+N with c inside N.
AdaptedBasis adapted_basis(const GradedSubspace& A, const GradedSubspace& B, const GradedSubspace& C,
                           Orientation orientation, const GradedSubspace* c_source = nullptr);

/// Nondecreasing sequence of basis positions.
using PbwMonomial = std::vector<int>;
using PbwPoly = std::map<PbwMonomial, Rational>;

/// PBW normal forms in U(F) truncated at the basis cutoff. Memoizes
/// straightening steps; safe to share across threads.
class PbwStraightener {
 public:
  explicit PbwStraightener(AdaptedBasis basis);
  ~PbwStraightener();
  PbwStraightener(PbwStraightener&&) noexcept;
  PbwStraightener& operator=(PbwStraightener&&) noexcept;

  const AdaptedBasis& basis() const;
  int monomial_degree(const PbwMonomial& m) const;
  /// Coordinates of a Lie element (degrees <= cutoff) in the basis.
  std::map<int, Rational> coordinates(const LieElt& x) const;
  /// Standard-monomial expansion of p; p must have degree <= cutoff.
  PbwPoly to_pbw(const AssocPoly& p) const;
  AssocPoly from_pbw(const PbwPoly& p) const;
  AssocPoly expand_monomial(const PbwMonomial& m) const;

 private:
  struct State;
  std::unique_ptr<State> s_;
};

/// Checks [N_d, y_i] ⊆ N_{d+1} for d < cutoff.
bool is_graded_ideal(const GradedSubspace& N);

/// Canonical representatives modulo N_U: straighten with the complement of N
/// ordered first, drop every standard monomial containing an N-element.
class IdealReducer {
 public:
  /// Throws PreconditionError when N is not an ideal.
  explicit IdealReducer(const GradedSubspace& N);
  const GradedSubspace& ideal() const { return N_; }
  const PbwStraightener& straightener() const { return pbw_; }
  AssocPoly reduce(const AssocPoly& p) const;
  bool in_ideal(const AssocPoly& p) const { return reduce(p).is_zero(); }

 private:
  GradedSubspace N_;
  PbwStraightener pbw_;
};

AssocPoly reduce_mod_ideal(const AssocPoly& p, const GradedSubspace& N);

}  // namespace fox
