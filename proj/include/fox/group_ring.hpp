#pragma once

// Integral group ring Z(F) and quotient oracles describing a normal subgroup N.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fox/words.hpp"

namespace fox {

class RingElt {
 public:
  using TermMap = std::unordered_map<Word, Integer, WordHash>;

  explicit RingElt(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}
  static RingElt zero(AlphabetPtr alphabet) { return RingElt(std::move(alphabet)); }
  static RingElt one(AlphabetPtr alphabet);
  static RingElt from_word(const Word& w, Integer coeff = 1);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of w (0 if absent).
  Integer coefficient(const Word& w) const;
  void add_term(const Word& w, const Integer& coeff);
  /// Terms sorted shortlex by word.
  std::vector<std::pair<Word, Integer>> sorted_terms() const;

  friend bool operator==(const RingElt& a, const RingElt& b);

 private:
  AlphabetPtr alphabet_;
  TermMap terms_;
};

RingElt ring_add(const RingElt& a, const RingElt& b);
RingElt ring_sub(const RingElt& a, const RingElt& b);
RingElt ring_scale(const Integer& k, const RingElt& a);
RingElt ring_multiply(const RingElt& a, const RingElt& b);
/// a·w and w·a for a single group element.
RingElt multiply_right(const RingElt& a, const Word& w);
RingElt multiply_left(const Word& w, const RingElt& a);

inline RingElt operator+(const RingElt& a, const RingElt& b) { return ring_add(a, b); }
inline RingElt operator-(const RingElt& a, const RingElt& b) { return ring_sub(a, b); }
inline RingElt operator*(const RingElt& a, const RingElt& b) { return ring_multiply(a, b); }

/// Sum of coefficients.
Integer augmentation(const RingElt& a);

/// Linear extension of a word map.
template <class F>
RingElt map_words(const RingElt& a, const AlphabetPtr& target, F&& f) {
  RingElt out(target);
  for (const auto& [w, c] : a.terms()) out.add_term(f(w), c);
  return out;
}

/// `3*g1 g2 - 2*g2 + 1`: terms `[k*]word` or a bare integer constant.
RingElt parse_ring_elt(const AlphabetPtr& alphabet, std::string_view text);
/// Terms sorted shortlex; the zero element prints as "0".
std::string to_string(const RingElt& a);

using CosetKey = std::vector<Integer>;
/// Coefficients summed per coset; zero entries dropped.
using Residue = std::map<CosetKey, Integer>;

std::string key_to_string(const CosetKey& key);

/// A normal subgroup N of F presented through a coset-separating key.
class QuotientOracle {
 public:
  enum class Kind { trivial, identity, abelian, nilpotent, finite };

  /// N = F.
  static QuotientOracle trivial(AlphabetPtr alphabet);
  /// N = 1; the key spells out the reduced word, so reduce_mod is injective.
  static QuotientOracle identity_subgroup(AlphabetPtr alphabet);
  /// N = [F,F], and with kill_factors also the normal closure of the factors.
  static QuotientOracle abelianization(AlphabetPtr alphabet, bool kill_factors = true);
  /// N = gamma_{c+1}(F) for free F; key = Magnus image truncated at degree c.
  static QuotientOracle free_nilpotent(AlphabetPtr alphabet, int c);
  /// Kernel of F -> Z/orders[0] x ... ; free_images[j-1] is the image of g_j,
  /// factor_images[i-1] the image of a_i (zero when omitted).
  static QuotientOracle finite_abelian(AlphabetPtr alphabet, std::vector<Integer> orders,
                                       std::vector<std::vector<Integer>> free_images,
                                       std::vector<std::vector<Integer>> factor_images = {});

  Kind kind() const { return kind_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  int nilpotency_class() const { return nilpotent_class_; }
  const std::vector<Integer>& target_orders() const { return orders_; }

  CosetKey coset_key(const Word& w) const;
  const CosetKey& identity_key() const { return identity_key_; }
  bool contains(const Word& w) const { return coset_key(w) == identity_key_; }

  bool finite_index() const { return index_.has_value(); }
  /// [F:N] when finite.
  std::optional<long> index() const { return index_; }
  std::string describe() const;

 private:
  QuotientOracle() = default;

  Kind kind_ = Kind::trivial;
  AlphabetPtr alphabet_;
  bool kill_factors_ = true;
  int nilpotent_class_ = 0;
  std::vector<Integer> orders_;
  std::vector<std::vector<Integer>> free_images_;
  std::vector<std::vector<Integer>> factor_images_;
  CosetKey identity_key_;
  std::optional<long> index_;
};

Residue reduce_mod(const RingElt& a, const QuotientOracle& q);
std::string to_string(const Residue& r);

}  // namespace fox
