#pragma once

// Truncated Magnus embedding g_j -> 1 + x_j into noncommutative power series.

#include <map>
#include <string>

#include "fox/group_ring.hpp"
#include "fox/monomial.hpp"

namespace fox {

class TruncSeries {
 public:
  using TermMap = std::map<Monomial, Integer, DegLexLess>;

  TruncSeries(int rank, int cutoff);
  static TruncSeries one(int rank, int cutoff);

  int rank() const { return rank_; }
  int cutoff() const { return cutoff_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Monomial& m) const;
  /// Terms of degree > cutoff are dropped silently.
  void add_term(const Monomial& m, const Integer& c);

  /// Smallest degree carrying a nonzero term, or cutoff+1 for the zero series.
  int min_degree() const;

  friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

 private:
  int rank_;
  int cutoff_;
  TermMap terms_;
};

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries series_scale(const Integer& k, const TruncSeries& a);
TruncSeries series_multiply(const TruncSeries& a, const TruncSeries& b);

TruncSeries embed(const Word& w, int cutoff);
/// Linear extension of embed to Z(F).
TruncSeries embed(const RingElt& a, int cutoff);

/// A filtration degree that may be right-censored at the cutoff.
struct FiltrationWeight {
  int value = 0;
  bool at_least = false;  // true: the true weight is >= value (= cutoff+1)

  bool is_exactly(int n) const { return !at_least && value == n; }
  bool at_least_n(int n) const { return value >= n; }
};

std::string to_string(const FiltrationWeight& w);

/// Minimal degree of embed(w) - 1; equals n iff w in gamma_n \ gamma_{n+1}
/// whenever n <= cutoff.
FiltrationWeight gamma_weight(const Word& w, int cutoff);
/// Minimal degree of the image of a; 0 iff augmentation(a) != 0.
FiltrationWeight ideal_weight(const RingElt& a, int cutoff);

/// Terms sorted by (degree, lex), e.g. "1 + x1*x2 - x2*x1".
std::string to_string(const TruncSeries& s);

/// Generalized binomial coefficient e choose k for any integer e.
Integer binomial(const Integer& e, unsigned k);

}  // namespace fox
