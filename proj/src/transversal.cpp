#include "fox/transversal.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>

#include "fox/lattice.hpp"

namespace fox {

namespace {

// Level-by-level shortlex enumeration of coset representatives, restricted to
// a symbol subset. Only extensions s*x of existing representatives that grow
// the length by exactly one are considered, which keeps the set prefix-closed.
struct ShortlexBfs {
  const QuotientOracle* q = nullptr;
  std::vector<Symbol> symbols;
  std::map<CosetKey, Word> reps;
  std::vector<std::vector<Word>> levels;
  bool complete = false;

  ShortlexBfs(const QuotientOracle& oracle, std::vector<Symbol> syms)
      : q(&oracle), symbols(std::move(syms)) {
    std::sort(symbols.begin(), symbols.end(), symbol_less);
    Word id(q->alphabet());
    reps.emplace(q->identity_key(), id);
    levels.push_back({id});
  }

  std::size_t depth() const { return levels.size() - 1; }

  void grow() {
    if (complete) return;
    std::vector<Word> next;
    const std::size_t len = depth() + 1;
    for (const Word& s : levels.back()) {
      for (const Symbol& x : symbols) {
        Word c = s * Word::from_symbol(q->alphabet(), x);
        if (c.length() != len) continue;
        if (reps.try_emplace(q->coset_key(c), c).second) next.push_back(c);
      }
    }
    if (next.empty()) complete = true;
    else levels.push_back(std::move(next));
  }

  void grow_to(std::size_t len) {
    while (!complete && depth() < len) grow();
  }

  void grow_all() {
    if (!q->finite_index()) throw UnsupportedError("coset enumeration needs a finite-index quotient");
    while (!complete) grow();
  }

  const Word* find(const CosetKey& key) const {
    auto it = reps.find(key);
    return it == reps.end() ? nullptr : &it->second;
  }

  // Representative for a coset known to contain a word of length <= bound.
  const Word* find_within(const CosetKey& key, std::size_t bound) {
    for (;;) {
      if (const Word* w = find(key)) return w;
      if (complete || depth() >= bound) return nullptr;
      grow();
    }
  }
};

std::vector<Symbol> free_symbols(int from, int to) {
  std::vector<Symbol> out;
  for (int j = from; j <= to; ++j) {
    out.push_back({LetterKind::free, j, 1});
    out.push_back({LetterKind::free, j, -1});
  }
  return out;
}

Word drop_last_symbol(const Word& w) {
  auto syms = w.symbols();
  Word acc(w.alphabet());
  for (std::size_t i = 0; i + 1 < syms.size(); ++i) acc = acc * Word::from_symbol(w.alphabet(), syms[i]);
  return acc;
}

}  // namespace

struct Transversal::State {
  QuotientOracle q;
  Style style;
  mutable std::shared_mutex mutex;
  mutable ShortlexBfs full;
  mutable std::optional<ShortlexBfs> alpha;
  mutable std::map<CosetKey, Word> beta;
  mutable std::optional<std::vector<SchreierGenerator>> generators;

  State(QuotientOracle oracle, Style s)
      : q(std::move(oracle)), style(s), full(q, all_symbols(*q.alphabet())) {
    if (style == Style::alpha_beta) alpha.emplace(q, free_symbols(1, q.alphabet()->free_rank - 1));
  }

  // Cached lookup without growth; caller holds at least a shared lock.
  const Word* cached(const CosetKey& key) const {
    if (style == Style::shortlex) return full.find(key);
    if (const Word* w = alpha->find(key)) return w;
    auto it = beta.find(key);
    return it == beta.end() ? nullptr : &it->second;
  }

  // Caller holds the write lock.
  Word compute(const Word& u) const {
    CosetKey key = q.coset_key(u);
    const Word* z = full.find_within(key, u.length());
    if (!z) throw Error("coset enumeration failed to reach " + to_string(u));
    if (style == Style::shortlex) return *z;
    if (q.finite_index()) alpha->grow_all();
    else alpha->grow_to(std::max(u.length(), z->length()));
    if (const Word* a = alpha->find(key)) return *a;
    if (auto it = beta.find(key); it != beta.end()) return it->second;
    // beta class: rep(z_1..z_{l-1}) z_l for the shortlex-least z in the class
    Word zc = *z;
    Word prefix_rep = compute(drop_last_symbol(zc));
    Symbol last = zc.symbols().back();
    Word rep = prefix_rep * Word::from_symbol(q.alphabet(), last);
    if (rep.length() != prefix_rep.length() + 1)
      throw Error("alpha/beta representative lost the Schreier property at " + to_string(zc));
    beta.emplace(key, rep);
    return rep;
  }

  bool is_alpha(const CosetKey& key, std::size_t len) const {
    if (q.finite_index()) alpha->grow_all();
    else alpha->grow_to(len);
    return alpha->find(key) != nullptr;
  }
};

Transversal::Transversal(QuotientOracle q, Style style)
    : state_(std::make_unique<State>(std::move(q), style)) {
  if (style == Style::alpha_beta && state_->q.alphabet()->free_rank < 1)
    throw PreconditionError("alpha/beta transversal needs at least one free generator");
  if (state_->q.finite_index()) {
    state_->full.grow_all();
    if (!prefix_closed()) throw Error("transversal is not prefix-closed");
  }
}

Transversal::~Transversal() = default;
Transversal::Transversal(Transversal&&) noexcept = default;
Transversal& Transversal::operator=(Transversal&&) noexcept = default;

const QuotientOracle& Transversal::oracle() const { return state_->q; }
Transversal::Style Transversal::style() const { return state_->style; }

Word Transversal::representative(const Word& u) const {
  CosetKey key = state_->q.coset_key(u);
  {
    std::shared_lock lock(state_->mutex);
    if (const Word* w = state_->cached(key)) return *w;
  }
  std::unique_lock lock(state_->mutex);
  return state_->compute(u);
}

Transversal::ClassKind Transversal::class_kind(const Word& u) const {
  if (state_->style != Style::alpha_beta) throw UnsupportedError("class kinds need an alpha/beta transversal");
  CosetKey key = state_->q.coset_key(u);
  std::unique_lock lock(state_->mutex);
  const Word* z = state_->full.find_within(key, u.length());
  std::size_t len = std::max(u.length(), z ? z->length() : 0);
  return state_->is_alpha(key, len) ? ClassKind::alpha : ClassKind::beta;
}

std::vector<Word> Transversal::representatives() const {
  std::vector<Word> zs;
  {
    std::unique_lock lock(state_->mutex);
    state_->full.grow_all();
    for (const auto& level : state_->full.levels) zs.insert(zs.end(), level.begin(), level.end());
  }
  std::vector<Word> out;
  out.reserve(zs.size());
  for (const Word& z : zs) out.push_back(representative(z));
  std::sort(out.begin(), out.end(), ShortlexLess{});
  return out;
}

bool Transversal::prefix_closed() const {
  for (const Word& r : representatives()) {
    if (r.is_identity()) continue;
    Word p = drop_last_symbol(r);
    if (!(representative(p) == p)) return false;
  }
  return representative(Word(state_->q.alphabet())).is_identity();
}

namespace {

std::vector<Symbol> generator_symbols(const Alphabet& a, const std::set<FoxIndex>* K) {
  std::vector<Symbol> out;
  for (int i = 1; i <= a.factor_count(); ++i) {
    if (K && !K->count(FoxIndex::factor(i))) continue;
    for (int e = 1; e < a.factor_order(i); ++e) out.push_back({LetterKind::factor, i, e});
  }
  for (int j = 1; j <= a.free_rank; ++j) {
    if (K && !K->count(FoxIndex::free(j))) continue;
    out.push_back({LetterKind::free, j, 1});
  }
  return out;
}

void require_finite(const Transversal& t) {
  if (!t.oracle().finite_index())
    throw UnsupportedError("operation needs a finite-index quotient");
}

// Lookup table (coset of s, symbol) -> generator index.
struct GeneratorTable {
  std::vector<SchreierGenerator> gens;
  std::map<std::pair<CosetKey, std::pair<int, std::pair<int, int>>>, std::size_t> index;

  explicit GeneratorTable(const Transversal& t) : gens(schreier_generators(t)) {
    for (std::size_t g = 0; g < gens.size(); ++g)
      index.emplace(slot(t, gens[g].s, gens[g].x), g);
  }

  static std::pair<CosetKey, std::pair<int, std::pair<int, int>>> slot(const Transversal& t, const Word& s,
                                                                     const Symbol& x) {
    return {t.oracle().coset_key(s), {static_cast<int>(x.kind), {x.index, x.exponent}}};
  }

  std::optional<std::size_t> find(const Transversal& t, const Word& s, const Symbol& x) const {
    auto it = index.find(slot(t, s, x));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

// Rewrites a symbol sequence starting at the trivial coset; returns the coset
// representative reached at the end.
Word rewrite_symbols(const Transversal& t, const GeneratorTable& table, const std::vector<Symbol>& syms,
                     std::vector<RewriteLetter>& out) {
  const AlphabetPtr& A = t.oracle().alphabet();
  Word s(A);
  for (const Symbol& y : syms) {
    if (y.kind == LetterKind::free && y.exponent < 0) {
      Symbol x{LetterKind::free, y.index, 1};
      Word prev = t.representative(s * Word::from_symbol(A, y));
      if (auto g = table.find(t, prev, x)) out.push_back({*g, -1});
      s = prev;
    } else {
      if (auto g = table.find(t, s, y)) out.push_back({*g, +1});
      s = t.representative(s * Word::from_symbol(A, y));
    }
  }
  return s;
}

std::vector<Integer> abelianize(const std::vector<RewriteLetter>& r, std::size_t n) {
  std::vector<Integer> v(n, 0);
  for (const auto& l : r) v[l.generator] += l.sign;
  return v;
}

std::vector<Integer> image_in_nab(const Transversal& t, const GeneratorTable& table, const Word& u) {
  std::vector<RewriteLetter> r;
  if (!rewrite_symbols(t, table, u.symbols(), r).is_identity())
    throw PreconditionError("word " + to_string(u) + " is not in N");
  return abelianize(r, table.gens.size());
}

}  // namespace

std::vector<SchreierGenerator> schreier_generators(const Transversal& t) {
  require_finite(t);
  std::vector<SchreierGenerator> out;
  const AlphabetPtr& A = t.oracle().alphabet();
  for (const Word& s : t.representatives()) {
    for (const Symbol& x : generator_symbols(*A, nullptr)) {
      Word sx = s * Word::from_symbol(A, x);
      Word w = sx * invert(t.representative(sx));
      if (!w.is_identity()) out.push_back({s, x, w});
    }
  }
  return out;
}

SchreierGenerator make_schreier_generator(const Transversal& t, const Word& s, const Symbol& x) {
  if (!(t.representative(s) == s)) throw PreconditionError(to_string(s) + " is not a representative");
  if (x.kind == LetterKind::free && x.exponent != 1)
    throw PreconditionError("Schreier generators use positive free generators");
  Word sx = s * Word::from_symbol(t.oracle().alphabet(), x);
  Word w = sx * invert(t.representative(sx));
  if (w.is_identity())
    throw PreconditionError("Schreier generator for (" + to_string(s) + ", x) is trivial");
  return {s, x, w};
}

std::vector<RewriteLetter> rewrite_in_schreier(const Transversal& t, const Word& u) {
  require_finite(t);
  if (!t.oracle().contains(u)) throw PreconditionError("word " + to_string(u) + " is not in N");
  GeneratorTable table(t);
  std::vector<RewriteLetter> out;
  rewrite_symbols(t, table, u.symbols(), out);
  return out;
}

Word evaluate_rewrite(const std::vector<SchreierGenerator>& gens, const std::vector<RewriteLetter>& rewritten,
                      const AlphabetPtr& alphabet) {
  Word acc(alphabet);
  for (const auto& l : rewritten) {
    const Word& w = gens.at(l.generator).w;
    acc = acc * (l.sign > 0 ? w : invert(w));
  }
  return acc;
}

bool derivative_leading_term_check(const Transversal& t, const SchreierGenerator& gen0,
                                   const SchreierGenerator& gen) {
  if (gen0.x.kind != LetterKind::free) throw PreconditionError("gen0 must come from a free generator");
  if (gen0.w.is_identity() || gen.w.is_identity()) throw PreconditionError("trivial Schreier generator");
  const AlphabetPtr& A = t.oracle().alphabet();
  FoxIndex j0 = FoxIndex::free(gen0.x.index);
  Word head = invert(t.representative(gen0.s * Word::from_symbol(A, gen0.x)));
  CosetKey head_key = t.oracle().coset_key(head);

  auto component = [&](const Word& w) {
    RingElt part(A);
    RingElt d = fox_derivative(w, j0);
    for (const auto& [word, c] : d.terms())
      if (t.oracle().coset_key(word) == head_key) part.add_term(word, c);
    return part;
  };

  bool same = gen.s == gen0.s && gen.x == gen0.x;
  RingElt part = component(gen.w);
  return same ? part == RingElt::from_word(head) : part.is_zero();
}

bool lattice_membership(const Transversal& t, const Word& u, const std::set<FoxIndex>& K) {
  require_finite(t);
  const QuotientOracle& q = t.oracle();
  const AlphabetPtr& A = q.alphabet();
  if (!q.contains(u)) throw PreconditionError("word " + to_string(u) + " is not in N");
  GeneratorTable table(t);
  const std::vector<Word> reps = t.representatives();
  IntegerLattice lattice(table.gens.size());

  // Relators of the factors, conjugated by every representative.
  for (int i = 1; i <= A->factor_count(); ++i) {
    const int m = A->factor_order(i);
    for (const Word& s : reps) {
      for (int e = 1; e < m; ++e) {
        for (int f = 1; f < m; ++f) {
          std::vector<Symbol> seq = s.symbols();
          seq.push_back({LetterKind::factor, i, e});
          seq.push_back({LetterKind::factor, i, f});
          int rest = (e + f) % m;
          if (rest) seq.push_back({LetterKind::factor, i, m - rest});
          for (const Symbol& y : invert(s).symbols()) seq.push_back(y);
          std::vector<RewriteLetter> r;
          rewrite_symbols(t, table, seq, r);
          lattice.insert(abelianize(r, table.gens.size()));
        }
      }
    }
  }

  // Generators of F_K cap N from a Schreier transversal inside F_K.
  std::vector<Symbol> k_symbols;
  for (const Symbol& s : all_symbols(*A)) {
    FoxIndex idx{s.kind, s.index};
    if (K.count(idx)) k_symbols.push_back(s);
  }
  ShortlexBfs sub(q, k_symbols);
  sub.grow_all();
  std::vector<Word> targets;
  for (const auto& [key, s] : sub.reps) {
    for (const Symbol& x : generator_symbols(*A, &K)) {
      Word sx = s * Word::from_symbol(A, x);
      const Word* r = sub.find(q.coset_key(sx));
      if (!r) throw Error("subgroup transversal is not closed");
      Word w = sx * invert(*r);
      if (!w.is_identity()) targets.push_back(w);
    }
  }
  // N cap A_i is generated by a_i^d with d the order of a_i modulo N.
  for (int i = 1; i <= A->factor_count(); ++i) {
    const int m = A->factor_order(i);
    for (int d = 1; d < m; ++d) {
      Word ad = Word::factor_element(A, i, d);
      if (q.contains(ad)) {
        targets.push_back(ad);
        break;
      }
    }
  }
  for (const Word& w : targets)
    for (const Word& s : reps) lattice.insert(image_in_nab(t, table, conjugate(w, s)));

  return lattice.contains(image_in_nab(t, table, u));
}

}  // namespace fox
