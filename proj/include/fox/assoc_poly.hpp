#pragma once

// Polynomials in the free associative algebra Q<x1..xn> (the envelope U(F)).

#include <map>
#include <string>
#include <string_view>

#include "fox/monomial.hpp"
#include "fox/numeric.hpp"

namespace fox {

class AssocPoly {
 public:
  using TermMap = std::map<Monomial, Rational, DegLexLess>;

  explicit AssocPoly(int rank = 0) : rank_(rank) {}
  static AssocPoly constant(int rank, const Rational& c);
  static AssocPoly monomial(int rank, const Monomial& m, const Rational& c = 1);
  static AssocPoly generator(int rank, int j) { return monomial(rank, letter(j)); }

  int rank() const { return rank_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);
  /// Largest monomial length, -1 for zero.
  int degree() const;
  /// Homogeneous component of degree d.
  AssocPoly component(int d) const;
  /// Drops every term of degree > d.
  AssocPoly truncated(int d) const;

  friend bool operator==(const AssocPoly&, const AssocPoly&) = default;

 private:
  int rank_;
  TermMap terms_;
};

AssocPoly operator+(const AssocPoly& a, const AssocPoly& b);
AssocPoly operator-(const AssocPoly& a, const AssocPoly& b);
AssocPoly operator*(const Rational& k, const AssocPoly& a);
AssocPoly poly_multiply(const AssocPoly& a, const AssocPoly& b);
inline AssocPoly operator*(const AssocPoly& a, const AssocPoly& b) { return poly_multiply(a, b); }
/// pq - qp
AssocPoly poly_commutator(const AssocPoly& p, const AssocPoly& q);

/// Rational printed as "3", "-2", "1/2".
std::string rational_to_string(const Rational& q);
/// Terms sorted by (degree, lex): "x1*x2 - x2*x1 + 3" style, constant printed bare.
std::string to_string(const AssocPoly& p);
/// Parses `x1*x2 - 1/2*x2*x1 + 3`; letters must be within rank.
AssocPoly parse_assoc_poly(int rank, std::string_view text);

}  // namespace fox
