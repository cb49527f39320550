#pragma once

// Reduced words in F = (*_i A_i) * G, where every A_i is cyclic of finite order
// m_i and G is free on g1..gn.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fox/numeric.hpp"

namespace fox {

struct Alphabet {
  int free_rank = 0;
  std::vector<int> factor_orders;

  int factor_count() const { return static_cast<int>(factor_orders.size()); }
  bool has_factors() const { return !factor_orders.empty(); }
  int factor_order(int i) const { return factor_orders.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// Validates free_rank + #factors >= 1 and all orders >= 2.
AlphabetPtr make_alphabet(int free_rank, std::vector<int> factor_orders = {});

bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);
void require_same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b);

// Factor letters sort before free letters.
enum class LetterKind : std::uint8_t { factor = 0, free = 1 };

struct Letter {
  LetterKind kind = LetterKind::free;
  int index = 1;  // 1-based
  Integer exponent = 1;

  static Letter free(int j, Integer e = 1) { return {LetterKind::free, j, std::move(e)}; }
  static Letter factor(int i, Integer e = 1) { return {LetterKind::factor, i, std::move(e)}; }

  bool same_base(const Letter& o) const { return kind == o.kind && index == o.index; }
  friend bool operator==(const Letter& a, const Letter& b) {
    return a.kind == b.kind && a.index == b.index && a.exponent == b.exponent;
  }
};

/// One step of the expanded spelling of a word: a free generator to the power
/// +1/-1, or a nontrivial element a_i^e (1 <= e < m_i) of a cyclic factor. The
/// set of symbols is the alphabet X^{+-1} used by shortlex orders and
/// Reidemeister-Schreier rewriting.
struct Symbol {
  LetterKind kind = LetterKind::free;
  int index = 1;
  int exponent = 1;  // +-1 for free symbols, 1..m-1 for factor symbols

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Total order on symbols: factor symbols (by index, then exponent) precede
/// free symbols (by index, then g before g^-1).
bool symbol_less(const Symbol& a, const Symbol& b);

/// All symbols of the alphabet in symbol order.
std::vector<Symbol> all_symbols(const Alphabet& alphabet);

class Word {
 public:
  explicit Word(AlphabetPtr alphabet);

  /// Free reduction plus exponent arithmetic modulo factor orders.
  static Word reduce(AlphabetPtr alphabet, std::span<const Letter> raw);
  static Word generator(AlphabetPtr alphabet, int j, Integer exponent = 1);
  static Word factor_element(AlphabetPtr alphabet, int i, Integer exponent = 1);
  static Word from_symbol(AlphabetPtr alphabet, const Symbol& s);

  const AlphabetPtr& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }

  /// Sum of |exponent| over free letters plus one per factor letter.
  std::size_t length() const;
  std::vector<Symbol> symbols() const;

  /// True when every letter is a free generator with index in `indices`.
  bool over_free_indices(std::span<const int> indices) const;

  friend bool operator==(const Word& a, const Word& b);

 private:
  Word(AlphabetPtr alphabet, std::vector<Letter> letters);

  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
/// t^-1 u t
Word conjugate(const Word& u, const Word& t);
/// u^-1 v^-1 u v
Word commutator(const Word& u, const Word& v);
/// Left-normed commutator [[..[w1,w2],..],wk].
Word left_normed_commutator(std::span<const Word> parts);
Word power(const Word& u, long exponent);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

struct CyclicReduction {
  Word core;
  Word conjugator;  // u == conjugator^-1 * core * conjugator
};

CyclicReduction cyclically_reduce(const Word& u);

/// Shortlex on expanded symbol sequences (see symbol_less).
bool shortlex_less(const Word& a, const Word& b);
struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Tokens `g3`, `g3^-2`, `a1^4`, separated by whitespace; "" or "1" is the
/// identity. Tokens are multiplied and reduced.
Word parse_word(const AlphabetPtr& alphabet, std::string_view text);
/// Inverse of parse_word; the identity prints as "1".
std::string to_string(const Word& w);

/// Image under g_j -> g_j (j in keep), g_j -> 1 otherwise; factor letters kept.
Word retract_to_free_indices(const Word& w, std::span<const int> keep);

/// Substitute word images for the free generators of `w` (factor letters are
/// not allowed); images[j-1] is the image of g_j.
Word substitute(const Word& w, std::span<const Word> images, const AlphabetPtr& target);

}  // namespace fox
