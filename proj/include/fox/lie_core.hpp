#pragma once

// Free Lie algebra over Q on y1..yn in the Lyndon basis, with basis elements
// bracketed by the standard (longest proper Lyndon suffix) factorization.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fox/assoc_poly.hpp"
#include "fox/linalg.hpp"

namespace fox {

bool is_lyndon(const Monomial& w);
/// Lyndon words of length exactly d over 1..rank, lex-sorted.
const std::vector<Monomial>& lyndon_basis(int rank, int d);
/// Position of a Lyndon word inside lyndon_basis(rank, |w|).
int lyndon_index(int rank, const Monomial& w);
Integer witt_dimension(int rank, int d);
/// w = uv with v the longest proper Lyndon suffix.
std::pair<Monomial, Monomial> standard_factorization(const Monomial& w);
/// "[y1,[y1,y2]]"
std::string bracketing_to_string(const Monomial& w);

class LieElt {
 public:
  using CoordMap = std::map<Monomial, Rational, DegLexLess>;

  explicit LieElt(int rank = 0) : rank_(rank) {}
  static LieElt generator(int rank, int i);
  static LieElt basis(int rank, const Monomial& lyndon, const Rational& c = 1);

  int rank() const { return rank_; }
  const CoordMap& coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  Rational coefficient(const Monomial& w) const;
  void add_term(const Monomial& w, const Rational& c);
  /// Highest degree present, 0 for zero.
  int degree() const;
  int min_degree() const;
  bool is_homogeneous() const;
  LieElt component(int d) const;
  std::vector<int> degrees() const;

  friend bool operator==(const LieElt&, const LieElt&) = default;

 private:
  int rank_;
  CoordMap coords_;
};

LieElt operator+(const LieElt& a, const LieElt& b);
LieElt operator-(const LieElt& a, const LieElt& b);
LieElt operator*(const Rational& k, const LieElt& a);
LieElt bracket(const LieElt& a, const LieElt& b);
/// Left-normed [..[a1,a2],..,ak].
LieElt left_normed(const std::vector<LieElt>& parts);

AssocPoly expand_to_assoc(const LieElt& a);
/// Raised by project_to_lyndon on non-Lie input; carries what could not be absorbed.
class NotLieError : public PreconditionError {
 public:
  NotLieError(const std::string& what, AssocPoly residual)
      : PreconditionError(what), residual_(std::move(residual)) {}
  const AssocPoly& residual() const { return residual_; }

 private:
  AssocPoly residual_;
};
LieElt project_to_lyndon(const AssocPoly& p);

/// Coordinates of the degree-d component in lyndon_basis(rank, d) order.
RVector dense_component(const LieElt& a, int d);
LieElt from_dense(int rank, int d, const RVector& v);

/// Sum of coefficient * bracketing, e.g. "[y1,y2] - 1/2*[y1,[y1,y2]]"; "0" for zero.
std::string to_string(const LieElt& a);
/// expr := term (('+'|'-') term)*; term := [rational '*'] atom;
/// atom := 'y'k | '[' expr ',' expr ']'. The literal "0" is the zero element.
LieElt parse_lie(int rank, std::string_view text);

/// Graded subspace of F truncated at degree D, one echelon form per degree.
class GradedSubspace {
 public:
  GradedSubspace() = default;
  GradedSubspace(int rank, int cutoff);

  static GradedSubspace zero(int rank, int cutoff) { return GradedSubspace(rank, cutoff); }
  /// F_(m): everything of degree >= m.
  static GradedSubspace power(int rank, int cutoff, int m);
  static GradedSubspace full(int rank, int cutoff) { return power(rank, cutoff, 1); }
  /// Subalgebra generated by y_i, i in `indices`.
  static GradedSubspace subalgebra_on(int rank, int cutoff, const std::vector<int>& indices);
  /// Span of the homogeneous components of `elements` (degrees > cutoff dropped).
  static GradedSubspace span(int rank, int cutoff, const std::vector<LieElt>& elements);

  int rank() const { return rank_; }
  int cutoff() const { return cutoff_; }
  const Echelon& degree(int d) const;
  Echelon& degree_mut(int d);

  /// Adds every homogeneous component of degree <= cutoff; true if the span grew.
  bool insert(const LieElt& a);
  /// All homogeneous components of degree <= cutoff lie in the subspace.
  bool member(const LieElt& a) const;
  int dim(int d) const { return degree(d).rank(); }
  std::map<int, int> dims() const;
  std::vector<LieElt> basis(int d) const;
  bool contains(const GradedSubspace& other) const;

  friend bool operator==(const GradedSubspace&, const GradedSubspace&) = default;

 private:
  int rank_ = 0;
  int cutoff_ = 0;
  std::vector<Echelon> by_degree_;
};

void require_compatible(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace sum(const GradedSubspace& a, const GradedSubspace& b);
GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b);
/// [A,B]: per degree d, span of [a,b] with deg a + deg b = d.
GradedSubspace bracket_span(const GradedSubspace& a, const GradedSubspace& b);

/// Smallest graded ideal containing S (saturation by ad y_i).
GradedSubspace ideal_closure(const GradedSubspace& s);

/// Degree-d dimensions of the free Lie algebra on generators of the given
/// degrees (graded Witt formula), d = 1..cutoff.
std::vector<Integer> free_lie_dims(const std::vector<int>& generator_degrees, int cutoff);

}  // namespace fox
