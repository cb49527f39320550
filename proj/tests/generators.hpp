#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed so every
// run draws the same cases.

#include <random>
#include <vector>

#include "fox/group_ring.hpp"
#include "fox/words.hpp"

namespace foxtest {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Raw letter sequence of exactly `len` random letters (not reduced).
inline std::vector<fox::Letter> random_letters(const fox::Alphabet& a, int len, Rng& rng) {
  std::vector<fox::Letter> out;
  const int kinds = a.free_rank + a.factor_count();
  for (int t = 0; t < len; ++t) {
    int pick = uniform(rng, 1, kinds);
    if (pick <= a.free_rank) {
      out.push_back(fox::Letter::free(pick, uniform(rng, 0, 1) ? 1 : -1));
    } else {
      int i = pick - a.free_rank;
      out.push_back(fox::Letter::factor(i, uniform(rng, 1, a.factor_order(i) - 1)));
    }
  }
  return out;
}

/// Reduced word of length at most max_len.
inline fox::Word random_word(const fox::AlphabetPtr& a, int max_len, Rng& rng) {
  auto raw = random_letters(*a, uniform(rng, 0, max_len), rng);
  fox::Word w = fox::Word::reduce(a, raw);
  while (static_cast<int>(w.length()) > max_len) w = fox::Word::reduce(a, random_letters(*a, max_len, rng));
  return w;
}

inline fox::RingElt random_ring_elt(const fox::AlphabetPtr& a, int max_terms, int max_len, Rng& rng) {
  fox::RingElt r(a);
  int n = uniform(rng, 0, max_terms);
  for (int t = 0; t < n; ++t) r.add_term(random_word(a, max_len, rng), uniform(rng, -3, 3));
  return r;
}

}  // namespace foxtest
