#include "fox/fox_group.hpp"

#include <deque>

#include "fox/transversal.hpp"

namespace fox {

std::string to_string(const FoxIndex& k) {
  return (k.kind == LetterKind::free ? "g" : "a") + std::to_string(k.index);
}

std::vector<FoxIndex> all_fox_indices(const Alphabet& alphabet) {
  std::vector<FoxIndex> out;
  for (int i = 1; i <= alphabet.factor_count(); ++i) out.push_back(FoxIndex::factor(i));
  for (int j = 1; j <= alphabet.free_rank; ++j) out.push_back(FoxIndex::free(j));
  return out;
}

namespace {

void check_index(const Alphabet& a, const FoxIndex& k) {
  int bound = k.kind == LetterKind::free ? a.free_rank : a.factor_count();
  if (k.index < 1 || k.index > bound) throw PreconditionError("Fox index " + to_string(k) + " out of range");
}

// out += c * D_k(w)
void accumulate_derivative(RingElt& out, const Word& w, const FoxIndex& k, const Integer& c) {
  const AlphabetPtr& A = w.alphabet();
  const auto& ls = w.letters();
  Word suffix(A);
  for (std::size_t pos = ls.size(); pos-- > 0;) {
    const Letter& l = ls[pos];
    if (l.kind == k.kind && l.index == k.index) {
      if (l.kind == LetterKind::factor) {
        out.add_term(Word::factor_element(A, l.index, l.exponent) * suffix, c);
        out.add_term(suffix, -c);
      } else if (l.exponent > 0) {
        // sum_{t=0}^{e-1} g^t
        for (Integer t = 0; t < l.exponent; ++t) out.add_term(Word::generator(A, l.index, t) * suffix, c);
      } else {
        // -sum_{t=1}^{|e|} g^-t
        for (Integer t = 1; t <= -l.exponent; ++t) out.add_term(Word::generator(A, l.index, -t) * suffix, -c);
      }
    }
    Word head = Word::reduce(A, std::span<const Letter>(&l, 1));
    suffix = head * suffix;
  }
}

}  // namespace

RingElt fox_derivative(const Word& w, const FoxIndex& k) {
  check_index(*w.alphabet(), k);
  RingElt out(w.alphabet());
  accumulate_derivative(out, w, k, 1);
  return out;
}

RingElt fox_derivative(const RingElt& a, const FoxIndex& k) {
  check_index(*a.alphabet(), k);
  RingElt out(a.alphabet());
  for (const auto& [w, c] : a.terms()) accumulate_derivative(out, w, k, c);
  return out;
}

FundamentalDecomposition fundamental_decomposition(const RingElt& a) {
  FundamentalDecomposition d{augmentation(a), {}};
  for (const FoxIndex& k : all_fox_indices(*a.alphabet())) d.parts.emplace(k, fox_derivative(a, k));
  return d;
}

RingElt reassemble(const FundamentalDecomposition& d, const AlphabetPtr& alphabet) {
  RingElt out = ring_scale(d.constant, RingElt::one(alphabet));
  for (const auto& [k, part] : d.parts) {
    if (k.kind == LetterKind::factor) {
      out = out + part;
    } else {
      RingElt gm1 = RingElt::from_word(Word::generator(alphabet, k.index)) - RingElt::one(alphabet);
      out = out + gm1 * part;
    }
  }
  return out;
}

SubgroupFoxResult subgroup_fox(const std::vector<Word>& base, const Word& expr) {
  if (base.empty()) throw PreconditionError("subgroup base is empty");
  const AlphabetPtr& H = expr.alphabet();
  if (H->has_factors() || H->free_rank != static_cast<int>(base.size()))
    throw MismatchError("expression alphabet must be free of rank |base|");
  const AlphabetPtr& A = base.front().alphabet();
  for (const Word& b : base) require_same_alphabet(A, b.alphabet());

  SubgroupFoxResult res{substitute(expr, base, A), {}, {}, true};
  std::vector<RingElt> partials;
  for (int k = 1; k <= H->free_rank; ++k) {
    RingElt dk = fox_derivative(expr, FoxIndex::free(k));
    partials.push_back(map_words(dk, A, [&](const Word& w) { return substitute(w, base, A); }));
  }
  for (const FoxIndex& j : all_fox_indices(*A)) {
    RingElt direct = fox_derivative(res.f, j);
    RingElt chain(A);
    for (std::size_t k = 0; k < base.size(); ++k) chain = chain + fox_derivative(base[k], j) * partials[k];
    res.chain_check = res.chain_check && direct == chain;
    res.direct.push_back(std::move(direct));
    res.via_chain.push_back(std::move(chain));
  }
  return res;
}

CriterionReport schumann_check(const Word& v, const QuotientOracle& q) {
  require_same_alphabet(v.alphabet(), q.alphabet());
  if (!q.contains(v)) throw PreconditionError("v = " + to_string(v) + " is not in N");
  CriterionReport rep;
  for (const FoxIndex& k : all_fox_indices(*v.alphabet())) {
    Residue r = reduce_mod(fox_derivative(v, k), q);
    if (!r.empty()) {
      rep.holds = false;
      rep.residues.emplace(k, std::move(r));
    }
  }
  return rep;
}

namespace {

// Shortest word over the K-letters in the coset of `target`, by BFS over the
// finite quotient. Returns nullopt when F_K never meets that coset.
std::optional<Word> search_in_fk(const QuotientOracle& q, const std::set<FoxIndex>& K, const CosetKey& target) {
  const AlphabetPtr& A = q.alphabet();
  std::vector<Word> steps;
  for (const Symbol& s : all_symbols(*A))
    if (K.count(FoxIndex{s.kind, s.index})) steps.push_back(Word::from_symbol(A, s));
  std::map<CosetKey, Word> seen;
  std::deque<Word> queue;
  Word id(A);
  seen.emplace(q.coset_key(id), id);
  queue.push_back(id);
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    if (q.coset_key(cur) == target) return cur;
    for (const Word& s : steps) {
      Word next = cur * s;
      if (next.length() != cur.length() + 1) continue;
      if (seen.try_emplace(q.coset_key(next), next).second) queue.push_back(next);
    }
  }
  return std::nullopt;
}

}  // namespace

Theorem1Report theorem1_check(const Word& v, const std::set<FoxIndex>& K, const QuotientOracle& q,
                              int witness_bound) {
  require_same_alphabet(v.alphabet(), q.alphabet());
  if (!q.finite_index()) throw UnsupportedError("theorem1_check needs a finite-index quotient");
  for (const FoxIndex& k : K) check_index(*v.alphabet(), k);
  const AlphabetPtr& A = v.alphabet();

  Theorem1Report rep;
  for (const FoxIndex& k : all_fox_indices(*A)) {
    if (K.count(k)) continue;
    Residue r = reduce_mod(fox_derivative(v, k), q);
    if (!r.empty()) {
      rep.holds = false;
      rep.residues.emplace(k, std::move(r));
    }
  }

  // v-hat: the retraction F -> F_K first, then a coset search inside F_K.
  const CosetKey key = q.coset_key(v);
  std::vector<Letter> kept;
  for (const Letter& l : v.letters())
    if (K.count(FoxIndex{l.kind, l.index})) kept.push_back(l);
  Word retracted = Word::reduce(A, kept);
  if (q.coset_key(retracted) == key) {
    rep.witness = retracted;
    rep.witness_source = "retraction";
  } else if (auto found = search_in_fk(q, K, key)) {
    if (static_cast<int>(found->length()) > witness_bound) {
      rep.status = "inconclusive-witness";
      rep.witness_source = "none";
      return rep;
    }
    rep.witness = *found;
    rep.witness_source = "search";
  } else {
    // No element of F_K lies in vN, so no v-hat can work.
    rep.status = "no-witness";
    rep.witness_source = "none";
    rep.lattice_membership = false;
    rep.agree = !rep.holds;
    return rep;
  }

  Transversal t(q);
  rep.lattice_membership = lattice_membership(t, v * invert(*rep.witness), K);
  rep.agree = rep.lattice_membership == rep.holds;
  return rep;
}

GammaCriterionResult subgroup_gamma_criterion(const Word& v, const std::set<int>& K, int n, int cutoff) {
  const AlphabetPtr& A = v.alphabet();
  if (A->has_factors()) throw PreconditionError("gamma criterion needs a free alphabet");
  if (n < 1 || n > cutoff) throw PreconditionError("need 1 <= n <= cutoff");
  GammaCriterionResult res{true, Word(A), {}, false, ""};
  for (int k = 1; k <= A->free_rank; ++k) {
    RingElt d = fox_derivative(v, FoxIndex::free(k));
    if (!K.count(k)) {
      FiltrationWeight w = ideal_weight(d, cutoff);
      if (!w.at_least_n(n)) {
        res.holds = false;
        res.reason = "D_" + std::to_string(k) + "(v) has weight " + to_string(w) + " < " + std::to_string(n);
        break;
      }
    } else if (n > 1) {
      TruncSeries low = embed(d, n - 1);
      for (const auto& [m, c] : low.terms()) {
        for (std::size_t p = 0; p < m.size(); ++p) {
          if (!K.count(letter_at(m, p))) {
            res.holds = false;
            res.reason = "D_" + std::to_string(k) + "(v) leaves Z(F_K) below weight " + std::to_string(n);
            break;
          }
        }
        if (!res.holds) break;
      }
      if (!res.holds) break;
    }
  }
  std::vector<int> keep(K.begin(), K.end());
  res.vbar = retract_to_free_indices(v, keep);
  res.residual = gamma_weight(v * invert(res.vbar), cutoff);
  res.retraction_check = res.residual.at_least_n(n + 1);
  return res;
}

Word escalate_witness(const Word& v, const Word& x2) { return commutator(v, x2); }

EscalationReport escalation_property(const Word& v, const Word& x2, int cutoff) {
  EscalationReport rep{escalate_witness(v, x2), {}, {}, true};
  rep.before = ideal_weight(fox_derivative(v, FoxIndex::free(1)), cutoff);
  rep.after = ideal_weight(fox_derivative(rep.w, FoxIndex::free(1)), cutoff);
  if (!rep.before.at_least && rep.before.value + 1 <= cutoff)
    rep.ok = !rep.after.at_least && rep.after.value <= rep.before.value + 1;
  return rep;
}

}  // namespace fox
