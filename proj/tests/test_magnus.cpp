#include "doctest.h"
#include "fox/fox_group.hpp"
#include "fox/magnus.hpp"
#include "generators.hpp"

using namespace fox;

namespace {

Word W(const AlphabetPtr& A, const char* s) { return parse_word(A, s); }

TruncSeries poly(int rank, int D, std::initializer_list<std::pair<Monomial, int>> terms) {
  TruncSeries s(rank, D);
  for (const auto& [m, c] : terms) s.add_term(m, c);
  return s;
}

Monomial M(std::initializer_list<int> letters) {
  Monomial m;
  for (int l : letters) m += static_cast<char>(l);
  return m;
}

// Oracle for embed: expand a word into symbols and multiply truncated
// series for 1+x and 1-x+x^2-... one symbol at a time.
TruncSeries embed_by_symbols(const Word& w, int D) {
  const int n = w.alphabet()->free_rank;
  TruncSeries acc = TruncSeries::one(n, D);
  for (const Symbol& s : w.symbols()) {
    TruncSeries f = TruncSeries::one(n, D);
    Monomial xk;
    for (int k = 1; k <= D; ++k) {
      xk += static_cast<char>(s.index);
      if (s.exponent > 0 && k > 1) break;
      f.add_term(xk, s.exponent > 0 ? 1 : (k % 2 ? -1 : 1));
    }
    acc = series_multiply(acc, f);
  }
  return acc;
}

}  // namespace

TEST_CASE("series_multiply examples") {
  CHECK(series_multiply(poly(2, 2, {{M({}), 1}, {M({1}), 1}}),
                        poly(2, 2, {{M({}), 1}, {M({1}), -1}, {M({1, 1}), 1}})) == TruncSeries::one(2, 2));
  CHECK(series_multiply(poly(2, 2, {{M({}), 1}, {M({1}), 1}}), poly(2, 2, {{M({}), 1}, {M({2}), 1}})) ==
        poly(2, 2, {{M({}), 1}, {M({1}), 1}, {M({2}), 1}, {M({1, 2}), 1}}));
  CHECK(series_multiply(poly(2, 1, {{M({1}), 1}}), poly(2, 1, {{M({2}), 1}})).is_zero());
  CHECK_THROWS_AS(series_multiply(TruncSeries::one(2, 1), TruncSeries::one(2, 2)), MismatchError);
}

TEST_CASE("embed examples") {
  auto A = make_alphabet(2);
  CHECK(to_string(embed(W(A, "g1"), 3)) == "1 + x1");
  Word c = commutator(W(A, "g1"), W(A, "g2"));
  CHECK(to_string(embed(c, 2)) == "1 + x1*x2 - x2*x1");
  CHECK(to_string(embed(W(A, "g1^-1"), 2)) == "1 - x1 + x1*x1");
  CHECK_THROWS_AS(embed(parse_word(make_alphabet(1, {3}), "a1"), 2), PreconditionError);
}

TEST_CASE("gamma_weight and ideal_weight examples") {
  auto A = make_alphabet(2);
  Word g1 = W(A, "g1"), g2 = W(A, "g2");
  CHECK(gamma_weight(g1, 4).is_exactly(1));
  CHECK(gamma_weight(commutator(g1, g2), 4).is_exactly(2));
  CHECK(gamma_weight(commutator(commutator(g1, g2), g2), 4).is_exactly(3));
  auto id = gamma_weight(Word(A), 4);
  CHECK(id.at_least);
  CHECK(id.value == 5);
  auto R = [&](const char* s) { return parse_ring_elt(A, s); };
  CHECK(ideal_weight(R("g1 - 1"), 4).is_exactly(1));
  CHECK(ideal_weight(R("g1 - 1") * R("g2 - 1"), 4).is_exactly(2));
  CHECK(ideal_weight(RingElt::from_word(commutator(g1, g2)) - R("g2") + R("g2") - R("1"), 4).is_exactly(2));
  CHECK(ideal_weight(R("2*g1"), 4).is_exactly(0));
}

TEST_CASE("properties: homomorphism, filtration, Fox-weight link") {
  foxtest::Rng rng(3);
  auto A = make_alphabet(3);
  for (int it = 0; it < 300; ++it) {
    int D = foxtest::uniform(rng, 1, 5);
    Word u = foxtest::random_word(A, 8, rng), v = foxtest::random_word(A, 8, rng);
    CHECK(embed(u * v, D) == series_multiply(embed(u, D), embed(v, D)));
    CHECK(embed(u, D) == embed_by_symbols(u, D));
    auto wu = gamma_weight(u, 5), wv = gamma_weight(v, 5);
    auto wc = gamma_weight(commutator(u, v), 5);
    if (wu.value + wv.value <= 5) CHECK(wc.value >= wu.value + wv.value);
  }
  // Fox-weight link on commutators of known weight
  for (int it = 0; it < 200; ++it) {
    Word u = foxtest::random_word(A, 4, rng), v = foxtest::random_word(A, 4, rng);
    Word c = commutator(u, v);
    auto w = gamma_weight(c, 5);
    if (w.at_least) continue;
    int best = 100;
    for (int j = 1; j <= 3; ++j) {
      auto dw = ideal_weight(fox_derivative(c, FoxIndex::free(j)), 5);
      CHECK(dw.value >= w.value - 1);
      best = std::min(best, dw.value);
    }
    CHECK(best == w.value - 1);
  }
}

TEST_CASE("left-normed commutators of distinct generators have exact weight") {
  auto A = make_alphabet(5);
  std::vector<Word> gens;
  for (int j = 1; j <= 5; ++j) gens.push_back(Word::generator(A, j));
  for (std::size_t n = 1; n <= 5; ++n) {
    Word c = left_normed_commutator(std::span<const Word>(gens.data(), n));
    CHECK(gamma_weight(c, 5).is_exactly(static_cast<int>(n)));
  }
}

TEST_CASE("binomial handles negative tops") {
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 3) == 0);
}
