#include <algorithm>

#include "doctest.h"
#include "fox/assoc_env.hpp"
#include "lie_generators.hpp"

using namespace fox;

namespace {

LieElt Y(int rank, int i) { return LieElt::generator(rank, i); }

// Oracle: sort the letters of every monomial (image in the polynomial ring).
AssocPoly commutative_image(const AssocPoly& p) {
  AssocPoly out(p.rank());
  for (const auto& [m, c] : p.terms()) {
    Monomial s = m;
    std::sort(s.begin(), s.end());
    out.add_term(s, c);
  }
  return out;
}

// Oracle: the degree-d part of N_U spanned directly by u*n*v with u, v words.
Echelon explicit_ideal_span(const GradedSubspace& N, int d) {
  const int r = N.rank();
  std::vector<Monomial> words{Monomial{}};
  std::vector<std::vector<Monomial>> by_len{words};
  for (int len = 1; len <= d; ++len) {
    std::vector<Monomial> next;
    for (const Monomial& w : by_len.back())
      for (int i = 1; i <= r; ++i) next.push_back(w + letter(i));
    by_len.push_back(next);
  }
  const auto& all_d = by_len[d];
  auto index_of = [&](const Monomial& m) {
    return static_cast<int>(std::lower_bound(all_d.begin(), all_d.end(), m) - all_d.begin());
  };
  Echelon e(static_cast<int>(all_d.size()));
  for (int k = 1; k <= d; ++k) {
    for (const LieElt& n : N.basis(k)) {
      AssocPoly pn = expand_to_assoc(n);
      for (int lu = 0; lu <= d - k; ++lu) {
        for (const Monomial& u : by_len[lu]) {
          for (const Monomial& v : by_len[d - k - lu]) {
            RVector row(all_d.size());
            for (const auto& [m, c] : pn.terms()) row[index_of(u + m + v)] += c;
            e.insert(row);
          }
        }
      }
    }
  }
  return e;
}

RVector dense_assoc(const AssocPoly& p, int rank, int d) {
  std::vector<Monomial> all{Monomial{}};
  for (int len = 1; len <= d; ++len) {
    std::vector<Monomial> next;
    for (const Monomial& w : all)
      for (int i = 1; i <= rank; ++i) next.push_back(w + letter(i));
    all = next;
  }
  RVector v(all.size());
  for (const auto& [m, c] : p.terms())
    if (static_cast<int>(m.size()) == d) v[std::lower_bound(all.begin(), all.end(), m) - all.begin()] = c;
  return v;
}

long count_standard_monomials(const AdaptedBasis& B, int d) {
  // nondecreasing position sequences with degree sum d, by dynamic programming
  std::vector<long> ways(d + 1, 0);
  ways[0] = 1;
  for (std::size_t p = 0; p < B.size(); ++p) {
    const int e = B.degrees[p];
    for (int t = e; t <= d; ++t) ways[t] += ways[t - e];
  }
  return ways[d];
}

}  // namespace

TEST_CASE("adapted basis examples") {
  const int D = 3;
  GradedSubspace zero = GradedSubspace::zero(3, D), F = GradedSubspace::full(3, D);
  GradedSubspace H = GradedSubspace::subalgebra_on(3, D, {1, 2});
  AdaptedBasis B = adapted_basis(zero, zero, H, Orientation::ascending);
  CHECK(B.positions(Block::a).empty());
  CHECK(B.positions(Block::b).empty());
  std::vector<LieElt> c;
  for (int p : B.positions(Block::c)) c.push_back(B.elements[p]);
  std::vector<LieElt> expected;
  for (int d = 1; d <= D; ++d)
    for (const Monomial& w : lyndon_basis(2, d)) expected.push_back(LieElt::basis(3, w));
  CHECK(c == expected);
  long total = 0;
  for (int d = 1; d <= D; ++d) total += witt_dimension(3, d).get_si();
  CHECK(static_cast<long>(B.size()) == total);

  GradedSubspace FK = GradedSubspace::subalgebra_on(3, 2, {1, 2}), N = GradedSubspace::power(3, 2, 2);
  GradedSubspace A = intersect(FK, N);
  AdaptedBasis B2 = adapted_basis(A, FK, sum(FK, N), Orientation::ascending, &N);
  auto a = B2.positions(Block::a);
  REQUIRE(a.size() == 1);
  CHECK(B2.elements[a[0]] == bracket(Y(3, 1), Y(3, 2)));
  CHECK(B2.positions(Block::b).size() == 2);
  CHECK(B2.positions(Block::c).size() == 2);
  CHECK(B2.positions(Block::d).size() == 1);

  AdaptedBasis B3 = adapted_basis(A, FK, sum(FK, N), Orientation::descending, &N);
  CHECK(B3.blocks.front() == Block::d);
  CHECK(B3.blocks.back() == Block::a);
  for (Block blk : {Block::a, Block::b, Block::c, Block::d}) {
    std::vector<LieElt> x, y;
    for (int p : B2.positions(blk)) x.push_back(B2.elements[p]);
    for (int p : B3.positions(blk)) y.push_back(B3.elements[p]);
    CHECK(x == y);
  }
  CHECK_THROWS_AS(adapted_basis(FK, A, GradedSubspace::full(3, 2), Orientation::ascending), PreconditionError);
  CHECK_THROWS_AS(adapted_basis(A, FK, F, Orientation::ascending), MismatchError);
}

TEST_CASE("PBW at cutoff: counts and round trip") {
  foxtest::Rng rng(3);
  const int D = 5;
  GradedSubspace FK = GradedSubspace::subalgebra_on(3, D, {1, 2}), N = GradedSubspace::power(3, D, 2);
  for (Orientation o : {Orientation::ascending, Orientation::descending}) {
    AdaptedBasis B = adapted_basis(intersect(FK, N), FK, sum(FK, N), o, &N);
    for (int d = 1; d <= D; ++d) {
      long p = 1;
      for (int k = 0; k < d; ++k) p *= 3;
      CHECK(count_standard_monomials(B, d) == p);
    }
    PbwStraightener S(B);
    for (int t = 0; t < 40; ++t) {
      AssocPoly p = foxtest::random_poly(3, 0, D, 4, rng);
      PbwPoly q = S.to_pbw(p);
      for (const auto& [m, c] : q) {
        CHECK(std::is_sorted(m.begin(), m.end()));
        CHECK(S.monomial_degree(m) <= D);
      }
      CHECK(S.from_pbw(q) == p);
    }
    CHECK_THROWS_AS(S.to_pbw(foxtest::random_poly(3, D + 1, D + 1, 1, rng)), PreconditionError);
  }
}

TEST_CASE("reduce_mod_ideal examples") {
  GradedSubspace N = GradedSubspace::power(2, 4, 2);
  CHECK(reduce_mod_ideal(parse_assoc_poly(2, "x1*x2 - x2*x1"), N).is_zero());
  CHECK(reduce_mod_ideal(parse_assoc_poly(2, "x2*x1"), N) == parse_assoc_poly(2, "x1*x2"));
  CHECK(reduce_mod_ideal(AssocPoly::constant(2, 1), N) == AssocPoly::constant(2, 1));
  CHECK(reduce_mod_ideal(AssocPoly::constant(2, 1), GradedSubspace::power(2, 4, 3)) == AssocPoly::constant(2, 1));
  GradedSubspace not_ideal = GradedSubspace::span(2, 4, {bracket(Y(2, 1), Y(2, 2))});
  CHECK_THROWS_AS(reduce_mod_ideal(AssocPoly::constant(2, 1), not_ideal), PreconditionError);
}

TEST_CASE("reduction modulo F_(2) is the commutative image") {
  foxtest::Rng rng(11);
  IdealReducer R(GradedSubspace::power(3, 5, 2));
  for (int t = 0; t < 60; ++t) {
    AssocPoly p = foxtest::random_poly(3, 0, 5, 4, rng);
    CHECK(R.reduce(p) == commutative_image(p));
  }
}

TEST_CASE("reduction is a homomorphism and idempotent") {
  foxtest::Rng rng(12);
  for (int m : {2, 3}) {
    IdealReducer R(GradedSubspace::power(3, 6, m));
    for (int t = 0; t < 25; ++t) {
      AssocPoly p = foxtest::random_poly(3, 0, 3, 3, rng), q = foxtest::random_poly(3, 0, 3, 3, rng);
      AssocPoly rp = R.reduce(p), rq = R.reduce(q);
      CHECK(R.reduce(rp) == rp);
      CHECK(R.reduce(p * q) == R.reduce(rp * rq));
    }
  }
}

TEST_CASE("N_U membership agrees with an explicit spanning set") {
  foxtest::Rng rng(13);
  for (int m : {2, 3}) {
    const int D = 4;
    GradedSubspace N = GradedSubspace::power(2, D, m);
    IdealReducer R(N);
    AdaptedBasis B = R.straightener().basis();
    for (int d = 1; d <= D; ++d) {
      Echelon span = explicit_ideal_span(N, d);
      // dim N_U(d) = 2^d minus the standard monomials built from complement elements only
      std::vector<long> ways(d + 1, 0);
      ways[0] = 1;
      for (std::size_t p = 0; p < B.size(); ++p) {
        if (B.blocks[p] == Block::a) continue;
        for (int t = B.degrees[p]; t <= d; ++t) ways[t] += ways[t - B.degrees[p]];
      }
      CHECK(span.rank() == (1L << d) - ways[d]);
      for (int t = 0; t < 10; ++t) {
        AssocPoly p = foxtest::random_poly(2, d, d, 3, rng);
        AssocPoly diff = p - R.reduce(p);
        CHECK(span.contains(dense_assoc(diff, 2, d)));
        CHECK(R.in_ideal(p) == span.contains(dense_assoc(p, 2, d)));
      }
      for (const RVector& row : span.rows()) {
        AssocPoly p(2);
        std::vector<Monomial> all{Monomial{}};
        for (int len = 1; len <= d; ++len) {
          std::vector<Monomial> next;
          for (const Monomial& w : all)
            for (int i = 1; i <= 2; ++i) next.push_back(w + letter(i));
          all = next;
        }
        for (std::size_t k = 0; k < row.size(); ++k) p.add_term(all[k], row[k]);
        CHECK(R.in_ideal(p));
      }
    }
  }
}
