// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fox/fox_group.hpp"
#include "fox/fox_lie.hpp"
#include "fox/freiheit.hpp"
#include "fox/transversal.hpp"
#include "lie_generators.hpp"

using namespace fox;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// D(y w) = D(y) w + D(w) read off symbol by symbol.
RingElt derivative_by_symbols(const Word& w, const FoxIndex& k) {
  const AlphabetPtr& A = w.alphabet();
  auto syms = w.symbols();
  RingElt out(A);
  Word suffix(A);
  for (std::size_t p = syms.size(); p-- > 0;) {
    const Symbol& y = syms[p];
    Word yw = Word::from_symbol(A, y);
    if (y.kind == k.kind && y.index == k.index) {
      if (y.kind == LetterKind::factor) {
        out.add_term(yw * suffix, 1);
        out.add_term(suffix, -1);
      } else if (y.exponent > 0) {
        out.add_term(suffix, 1);
      } else {
        out.add_term(yw * suffix, -1);
      }
    }
    suffix = yw * suffix;
  }
  return out;
}

Verdict ac1() {
  foxtest::Rng rng(1001);
  long checks = 0, bad = 0;
  for (int it = 0; it < 1000; ++it) {
    auto A = make_alphabet(foxtest::uniform(rng, 1, 3), {5});
    Word u = foxtest::random_word(A, 8, rng), v = foxtest::random_word(A, 8, rng);
    RingElt rhs(A);
    for (const FoxIndex& k : all_fox_indices(*A)) {
      RingElt du = fox_derivative(u, k);
      bad += du != derivative_by_symbols(u, k);
      bad += fox_derivative(u * v, k) != multiply_right(du, v) + fox_derivative(v, k);
      bad += fox_derivative(invert(u), k) != ring_scale(-1, multiply_right(du, invert(u)));
      if (k.kind == LetterKind::factor) {
        rhs = rhs + du;
      } else {
        RingElt gm1 = RingElt::from_word(Word::generator(A, k.index)) - RingElt::one(A);
        rhs = rhs + gm1 * du;
      }
      checks += 4;
    }
    // u - eps(u) = sum_i D_i(u) + sum_j (g_j - 1) D_j(u)
    bad += RingElt::from_word(u) - RingElt::one(A) != rhs;
    ++checks;
  }
  return {bad == 0, std::to_string(checks) + " identities, " + std::to_string(bad) + " failures"};
}

Verdict ac2() {
  auto A = make_alphabet(3);
  const int cutoff = 6;
  int count = 0, bad = 0;
  // [g_i1, g_i2, ..., g_in] with i1 > i2 <= i3 <= ... <= in; these are
  // nonzero in the free Lie ring (re-checked below) hence of exact weight n.
  std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& seq, int n) {
    if (static_cast<int>(seq.size()) == n) {
      std::vector<Word> parts;
      std::vector<LieElt> lie;
      for (int i : seq) {
        parts.push_back(Word::generator(A, i));
        lie.push_back(LieElt::generator(3, i));
      }
      Word c = left_normed_commutator(parts);
      ++count;
      bool ok = n == 1 || !left_normed(lie).is_zero();
      ok = ok && gamma_weight(c, cutoff).is_exactly(n);
      int lo = cutoff + 1;
      for (int j = 1; j <= 3; ++j) {
        FiltrationWeight w = ideal_weight(fox_derivative(c, FoxIndex::free(j)), cutoff);
        if (!w.at_least) lo = std::min(lo, w.value);
        ok = ok && w.at_least_n(n - 1);
      }
      ok = ok && lo == n - 1;
      bad += !ok;
      return;
    }
    for (int i = 1; i <= 3; ++i) {
      const std::size_t s = seq.size();
      if (s == 1 && !(seq[0] > i)) continue;
      if (s >= 2 && i < seq[s - 1]) continue;
      seq.push_back(i);
      rec(seq, n);
      seq.pop_back();
    }
  };
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> seq;
    rec(seq, n);
  }
  return {bad == 0, std::to_string(count) + " commutators, " + std::to_string(bad) + " failures"};
}

Verdict ac3() {
  auto A = make_alphabet(2);
  auto q = QuotientOracle::finite_abelian(A, {2, 2}, {{1, 0}, {0, 1}});
  std::vector<Word> layer{Word(A)}, all{Word(A)};
  for (int len = 1; len <= 6; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (const Symbol& s : all_symbols(*A)) {
        Word c = w * Word::from_symbol(A, s);
        if (static_cast<int>(c.length()) == len) next.push_back(c);
      }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  int tested = 0, mismatches = 0, holds = 0, no_witness = 0;
  for (const Word& v : all) {
    if (!q.contains(v)) continue;
    ++tested;
    Theorem1Report r = theorem1_check(v, {FoxIndex::free(1)}, q);
    mismatches += !r.agree;
    holds += r.holds;
    no_witness += r.holds && !r.witness;
  }
  return {mismatches == 0 && no_witness == 0,
          std::to_string(tested) + " words in N, " + std::to_string(holds) + " criterion-true, " +
              std::to_string(mismatches) + " mismatches"};
}

Verdict ac4() {
  auto A = make_alphabet(2);
  auto q = QuotientOracle::finite_abelian(A, {2, 2}, {{1, 0}, {0, 1}});
  int pairs = 0, bad = 0, gens_seen = 0;
  for (auto style : {Transversal::Style::shortlex, Transversal::Style::alpha_beta}) {
    Transversal t(q, style);
    auto gens = schreier_generators(t);
    gens_seen += static_cast<int>(gens.size());
    for (const auto& a : gens)
      for (const auto& b : gens) {
        ++pairs;
        bad += !derivative_leading_term_check(t, a, b);
      }
  }
  return {bad == 0 && gens_seen == 10,
          std::to_string(gens_seen) + " generators over both transversals, " + std::to_string(pairs) + " pairs, " +
              std::to_string(bad) + " failures"};
}

Verdict ac5() {
  foxtest::Rng rng(1005);
  int group_bad = 0;
  for (int it = 0; it < 500; ++it) {
    int rank = foxtest::uniform(rng, 1, 3), hrank = foxtest::uniform(rng, 1, 3);
    auto A = make_alphabet(rank), H = make_alphabet(hrank);
    std::vector<Word> base;
    for (int k = 0; k < hrank; ++k) base.push_back(foxtest::random_word(A, 4, rng));
    group_bad += !subgroup_fox(base, foxtest::random_word(H, 6, rng)).chain_check;
  }
  int lie_done = 0, lie_bad = 0, skipped = 0;
  while (lie_done < 500) {
    std::vector<LieElt> base;
    int size = foxtest::uniform(rng, 1, 3);
    for (int k = 0; k < size; ++k)
      base.push_back(foxtest::random_homogeneous(3, foxtest::uniform(rng, 1, 2), 2, rng));
    LieElt f = foxtest::random_lie(size, 1, 3, 3, rng);
    try {
      lie_bad += !lie_chain_rule_check(base, f, 6);
      ++lie_done;
    } catch (const PreconditionError&) {
      ++skipped;  // dependent or zero base
    }
  }
  return {group_bad == 0 && lie_bad == 0, "group 500 instances, " + std::to_string(group_bad) + " failures; Lie 500 instances (" +
                                               std::to_string(skipped) + " non-free bases redrawn), " +
                                               std::to_string(lie_bad) + " failures"};
}

Verdict ac6() {
  int bad = 0;
  for (int r = 1; r <= 4; ++r)
    for (int d = 1; d <= 8; ++d) bad += Integer(static_cast<long>(lyndon_basis(r, d).size())) != witt_dimension(r, d);
  foxtest::Rng rng(1006);
  int elements = 0;
  for (int it = 0; it < 1000; ++it) {
    const int rank = foxtest::uniform(rng, 2, 3);
    const int dx = foxtest::uniform(rng, 1, 7);
    LieElt x = foxtest::random_homogeneous(rank, dx, 3, rng);
    ++elements;
    bad += project_to_lyndon(expand_to_assoc(x)) != x;
    const int rest = std::max(1, (9 - dx) / 2);
    LieElt y = foxtest::random_homogeneous(rank, foxtest::uniform(rng, 1, rest), 2, rng);
    LieElt z = foxtest::random_homogeneous(rank, foxtest::uniform(rng, 1, rest), 2, rng);
    bad += !(bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero();
    AssocPoly ex = expand_to_assoc(x), ey = expand_to_assoc(y);
    bad += expand_to_assoc(bracket(x, y)) != ex * ey - ey * ex;
  }
  return {bad == 0, "Witt counts r<=4, d<=8; " + std::to_string(elements) + " elements; " + std::to_string(bad) + " failures"};
}

LieElt random_in(const GradedSubspace& S, int lo, int hi, int terms, foxtest::Rng& rng) {
  LieElt x(S.rank());
  for (int t = 0; t < terms; ++t) {
    auto b = S.basis(foxtest::uniform(rng, lo, hi));
    if (b.empty()) continue;
    x = x + foxtest::small_rational(rng) * b[static_cast<std::size_t>(foxtest::uniform(rng, 0, static_cast<int>(b.size()) - 1))];
  }
  return x;
}

// p * n * q with n a basis element of S over `letters`, p and q monomials.
AssocPoly random_ideal_element(const GradedSubspace& S, const std::vector<int>& letters, int budget, foxtest::Rng& rng) {
  const int d = foxtest::uniform(rng, 1, std::max(1, budget));
  std::vector<LieElt> usable;
  for (const LieElt& x : S.basis(d)) {
    bool ok = true;
    for (const auto& [w, c] : x.coords())
      for (std::size_t i = 0; i < w.size() && ok; ++i)
        ok = std::find(letters.begin(), letters.end(), letter_at(w, i)) != letters.end();
    if (ok) usable.push_back(x);
  }
  if (usable.empty()) return AssocPoly(S.rank());
  const LieElt& n = usable[static_cast<std::size_t>(foxtest::uniform(rng, 0, static_cast<int>(usable.size()) - 1))];
  Monomial p, q;
  for (int k = foxtest::uniform(rng, 0, budget - d); k > 0; --k)
    (foxtest::uniform(rng, 0, 1) ? p : q) += letter(letters[static_cast<std::size_t>(foxtest::uniform(rng, 0, static_cast<int>(letters.size()) - 1))]);
  return foxtest::small_rational(rng) *
         (AssocPoly::monomial(S.rank(), p) * expand_to_assoc(n) * AssocPoly::monomial(S.rank(), q));
}

// Same polynomial over three letters.
AssocPoly lift(const AssocPoly& p) {
  AssocPoly out(3);
  for (const auto& [m, c] : p.terms()) out.add_term(m, c);
  return out;
}

Verdict ac7() {
  foxtest::Rng rng(1007);
  const int D = 6;
  int valid = 0, valid_bad = 0, invalid = 0, invalid_bad = 0;
  for (int m : {2, 3}) {
    GradedSubspace N = GradedSubspace::power(3, D, m);
    LieFoxSolver S(N, {1, 2});
    const IdealReducer& R = S.context().reducer();
    GradedSubspace FK = GradedSubspace::subalgebra_on(3, D, {1, 2});
    GradedSubspace A = intersect(FK, N), idA = ideal_closure(A);
    auto congruent = [&](const LieElt& v, const std::map<int, AssocPoly>& u) {
      LieFoxVector dv = lie_fox(v);
      for (const auto& [j, p] : u)
        if (!R.in_ideal(dv.part(j) - p)) return false;
      return true;
    };
    for (int t = 0; t < 100; ++t) {
      LieElt v0 = random_in(A, m, D, 3, rng);
      LieFoxVector d0 = lie_fox(v0);
      std::map<int, AssocPoly> u{{1, d0.part(1) + random_ideal_element(A, {1, 2}, D - 2, rng)}, {2, d0.part(2)}};
      LieElt v = S.solve_sigma_zero(u);
      valid_bad += !(A.member(v) && congruent(v, u));

      LieElt w0 = random_in(idA, m, D, 3, rng);
      LieFoxVector dw = lie_fox(w0);
      std::map<int, AssocPoly> uw{{1, dw.part(1)}, {2, dw.part(2) + random_ideal_element(N, {1, 2, 3}, D - 2, rng)}};
      LieElt w = S.solve_sigma_zero_ideal(uw);
      valid_bad += !(idA.member(w) && congruent(w, uw));
      valid += 2;
    }
    for (int t = 0; t < 25; ++t) {
      // sigma = x1 u1 + x2 u2 outside N_U cannot come from any v
      std::map<int, AssocPoly> bad{{1, lift(foxtest::random_poly(2, 0, 2, 2, rng))},
                                   {2, lift(foxtest::random_poly(2, 0, 2, 2, rng))}};
      AssocPoly sigma = AssocPoly::generator(3, 1) * bad[1] + AssocPoly::generator(3, 2) * bad[2];
      if (R.in_ideal(sigma)) continue;
      for (int which = 0; which < 2; ++which) {
        ++invalid;
        try {
          if (which == 0) S.solve_sigma_zero(bad);
          else S.solve_sigma_zero_ideal(bad);
          ++invalid_bad;
        } catch (const ResidueError& e) {
          invalid_bad += e.residue().is_zero();
        }
      }
    }
  }
  return {valid_bad == 0 && invalid_bad == 0 && valid == 400 && invalid > 0,
          std::to_string(valid / 2) + " valid inputs per solver (" + std::to_string(valid_bad) + " failures), " + std::to_string(invalid) +
              " invalid inputs (" + std::to_string(invalid_bad) + " not rejected with a residue)"};
}

Verdict ac8() {
  const int D = 6;
  IdealContext ctx(GradedSubspace::power(3, D, 2));
  const GradedSubspace& N = ctx.ideal();
  std::vector<LieElt> probes;
  for (int d = 2; d <= D; ++d)
    for (const LieElt& x : N.basis(d)) probes.push_back(x);
  const std::size_t spanning = probes.size();
  // [N,N] members and mixtures, so both verdicts occur
  for (int d = 4; d <= D; ++d)
    for (const LieElt& x : ctx.commutator().basis(d)) {
      probes.push_back(x);
      probes.push_back(x + N.basis(d - 2).front());
    }
  int agree = 0, in_nn = 0;
  for (const LieElt& v : probes) {
    KharlampovichReport r = kharlampovich_check(v, ctx);
    agree += r.agree;
    in_nn += r.membership;
  }
  const int total = static_cast<int>(probes.size());
  return {agree == total, std::to_string(spanning) + " basis elements of N plus " + std::to_string(total - static_cast<int>(spanning)) +
                              " [N,N]-based probes; " + std::to_string(in_nn) + " in [N,N]; " +
                              std::to_string(total - agree) + " mismatches"};
}

Verdict ac9() {
  const int D = 6;
  LieElt good = parse_lie(3, "[y1,y3]"), bad = parse_lie(3, "[y1,y2]");
  bool ok = true;
  std::string detail;
  for (const SeriesSpec& spec : {SeriesSpec::lower_central(D), SeriesSpec{{1, 2}, 1}}) {
    FreiheitReport r = lie_freiheitssatz_verify(good, spec, D);
    ok = ok && r.criterion.satisfied && r.all_equal;
    detail += "spec " + std::to_string(spec.blocks.size()) + " block(s): " + std::to_string(r.members.size()) + " members " +
              (r.all_equal ? "equal" : "UNEQUAL") + "; ";
  }
  FreiheitReport b = lie_freiheitssatz_verify(bad, SeriesSpec::lower_central(D), D);
  const MemberComparison* l3 = nullptr;
  for (const auto& m : b.members)
    if (m.k == 1 && m.l == 3) l3 = &m;
  bool strict = l3 && l3->degrees[1].with_relator > l3->degrees[1].without_relator && l3->witness;
  ok = ok && strict && !b.criterion.satisfied;
  detail += std::string("[y1,y2] at l=3, degree 2: ") +
            (l3 ? std::to_string(l3->degrees[1].with_relator) + " > " + std::to_string(l3->degrees[1].without_relator) : "missing");
  return {ok, detail};
}

Verdict ac10() {
  auto A = make_alphabet(3);
  Word g1 = Word::generator(A, 1), g2 = Word::generator(A, 2), g3 = Word::generator(A, 3);
  auto neg = group_criterion_bruteforce(commutator(g1, g3), 2, 6);
  auto pos = group_criterion_bruteforce(commutator(g1, g2), 2, 6);
  Word conj = conjugate(commutator(g1, g2), g3);
  auto pc = group_criterion_bruteforce(conj, 2, 6);
  bool ok = !neg.conjugate_found && pos.conjugate_found && pos.witness && pos.witness->first.is_identity() &&
            pos.witness->second == commutator(g1, g2) && pc.conjugate_found && pc.witness && pc.witness->first == g3 &&
            invert(pc.witness->first) * pc.witness->second * pc.witness->first == conj;
  std::string detail = "[g1,g3]: " + std::string(neg.conjugate_found ? "true" : "false") + " (" + neg.mode + ")";
  if (pos.witness) detail += "; [g1,g2]: (" + to_string(pos.witness->first) + ", " + to_string(pos.witness->second) + ")";
  if (pc.witness) detail += "; conjugate: (" + to_string(pc.witness->first) + ", " + to_string(pc.witness->second) + ")";
  return {ok, detail};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 = none
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> all{
      {1, "Fox identity suite", 10, ac1},
      {2, "weights of left-normed commutators", 0, ac2},
      {3, "derivative criterion vs lattice membership, Klein quotient", 60, ac3},
      {4, "Schreier generator leading terms", 0, ac4},
      {5, "group and Lie chain rules", 0, ac5},
      {6, "PBW/Lyndon suite", 0, ac6},
      {7, "constructive solvers", 0, ac7},
      {8, "Kharlampovich equivalence", 0, ac8},
      {9, "Lie freedom theorem", 120, ac9},
      {10, "group conjugacy criterion", 0, ac10},
  };
  int failures = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget) {
      v.pass = false;
      v.detail += "; over the " + std::to_string(static_cast<int>(c.budget)) + " s budget";
    }
    failures += !v.pass;
    std::printf("AC%d %s: %s -- %s [%.2f s]\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
