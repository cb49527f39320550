#include "fox/assoc_env.hpp"

#include <algorithm>
#include <mutex>

namespace fox {

char block_name(Block b) { return "abcd"[static_cast<int>(b)]; }

std::vector<int> AdaptedBasis::positions(Block b) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i] == b) out.push_back(static_cast<int>(i));
  return out;
}

AdaptedBasis adapted_basis(const GradedSubspace& A, const GradedSubspace& B, const GradedSubspace& C,
                           Orientation orientation, const GradedSubspace* c_source) {
  require_compatible(A, B);
  require_compatible(B, C);
  if (!B.contains(A) || !C.contains(B)) throw PreconditionError("subspace chain is not nested");
  if (c_source) {
    require_compatible(C, *c_source);
    if (!C.contains(*c_source) || !(sum(B, *c_source) == C))
      throw PreconditionError("c-block source does not complete B to C");
  }
  const int rank = A.rank(), D = A.cutoff();
  std::vector<std::vector<std::pair<RVector, int>>> per_block(4);
  for (int d = 1; d <= D; ++d) {
    const int n = static_cast<int>(lyndon_basis(rank, d).size());
    Echelon cur(n);
    for (const RVector& r : A.degree(d).rows()) {
      cur.insert(r);
      per_block[0].push_back({r, d});
    }
    for (const RVector& r : B.degree(d).rows())
      if (cur.insert(r)) per_block[1].push_back({r, d});
    for (const RVector& r : (c_source ? *c_source : C).degree(d).rows())
      if (cur.insert(r)) per_block[2].push_back({r, d});
    for (int k = 0; k < n && cur.rank() < n; ++k) {
      RVector e(n);
      e[k] = 1;
      if (cur.insert(e)) per_block[3].push_back({e, d});
    }
  }
  AdaptedBasis out;
  out.rank = rank;
  out.cutoff = D;
  out.orientation = orientation;
  std::vector<int> order{0, 1, 2, 3};
  if (orientation == Orientation::descending) std::reverse(order.begin(), order.end());
  for (int blk : order) {
    for (const auto& [v, d] : per_block[blk]) {
      out.elements.push_back(from_dense(rank, d, v));
      out.blocks.push_back(static_cast<Block>(blk));
      out.degrees.push_back(d);
    }
  }
  return out;
}

struct PbwStraightener::State {
  AdaptedBasis basis;
  // per degree: positions of degree-d elements and the inverse of their coordinate matrix
  std::vector<std::vector<int>> by_degree;
  std::vector<std::vector<RVector>> inverse;

  mutable std::mutex mutex;
  mutable std::map<std::pair<int, int>, std::map<int, Rational>> bracket_memo;
  mutable std::map<std::pair<PbwMonomial, int>, PbwPoly> append_memo;
  mutable std::map<Monomial, PbwPoly> monomial_memo;
  mutable std::map<PbwMonomial, AssocPoly> expand_memo;

  std::map<int, Rational> coordinates(const LieElt& x) const {
    std::map<int, Rational> out;
    for (int d : x.degrees()) {
      if (d > basis.cutoff) throw PreconditionError("Lie element exceeds the basis cutoff");
      RVector c = row_times(dense_component(x, d), inverse[d]);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) out.emplace(by_degree[d][i], c[i]);
    }
    return out;
  }

  std::map<int, Rational> bracket_coords(int m, int e) const {
    {
      std::lock_guard lock(mutex);
      auto it = bracket_memo.find({m, e});
      if (it != bracket_memo.end()) return it->second;
    }
    std::map<int, Rational> out;
    if (basis.degrees[m] + basis.degrees[e] <= basis.cutoff)
      out = coordinates(bracket(basis.elements[m], basis.elements[e]));
    std::lock_guard lock(mutex);
    return bracket_memo.emplace(std::pair{m, e}, std::move(out)).first->second;
  }

  int degree_of(const PbwMonomial& s) const {
    int d = 0;
    for (int p : s) d += basis.degrees[p];
    return d;
  }

  static void add(PbwPoly& acc, const PbwMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = acc.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) acc.erase(it);
    }
  }

  // Normal form of S * e for a standard monomial S.
  PbwPoly append(const PbwMonomial& s, int e) const {
    PbwPoly out;
    if (degree_of(s) + basis.degrees[e] > basis.cutoff) return out;
    if (s.empty() || s.back() <= e) {
      PbwMonomial m = s;
      m.push_back(e);
      out.emplace(std::move(m), 1);
      return out;
    }
    auto key = std::pair{s, e};
    {
      std::lock_guard lock(mutex);
      auto it = append_memo.find(key);
      if (it != append_memo.end()) return it->second;
    }
    // S' m e = (S' e) m + S' [m,e]
    const int m = s.back();
    PbwMonomial head(s.begin(), s.end() - 1);
    for (const auto& [t, c] : append(head, e))
      for (const auto& [u, k] : append(t, m)) add(out, u, c * k);
    for (const auto& [f, cf] : bracket_coords(m, e))
      for (const auto& [u, k] : append(head, f)) add(out, u, cf * k);
    std::lock_guard lock(mutex);
    return append_memo.emplace(std::move(key), std::move(out)).first->second;
  }

  PbwPoly of_monomial(const Monomial& w) const {
    if (w.empty()) return PbwPoly{{PbwMonomial{}, Rational(1)}};
    {
      std::lock_guard lock(mutex);
      auto it = monomial_memo.find(w);
      if (it != monomial_memo.end()) return it->second;
    }
    PbwPoly prefix = of_monomial(w.substr(0, w.size() - 1));
    PbwPoly out;
    auto gen = coordinates(LieElt::generator(basis.rank, letter_at(w, w.size() - 1)));
    for (const auto& [t, c] : prefix)
      for (const auto& [f, cf] : gen)
        for (const auto& [u, k] : append(t, f)) add(out, u, c * cf * k);
    std::lock_guard lock(mutex);
    return monomial_memo.emplace(w, std::move(out)).first->second;
  }
};

PbwStraightener::PbwStraightener(AdaptedBasis basis) : s_(std::make_unique<State>()) {
  s_->basis = std::move(basis);
  const AdaptedBasis& B = s_->basis;
  s_->by_degree.resize(B.cutoff + 1);
  s_->inverse.resize(B.cutoff + 1);
  for (std::size_t i = 0; i < B.size(); ++i) s_->by_degree[B.degrees[i]].push_back(static_cast<int>(i));
  for (int d = 1; d <= B.cutoff; ++d) {
    std::vector<RVector> rows;
    for (int p : s_->by_degree[d]) rows.push_back(dense_component(B.elements[p], d));
    if (rows.size() != lyndon_basis(B.rank, d).size()) throw PreconditionError("adapted basis does not span F");
    auto inv = invert_matrix(rows);
    if (!inv) throw PreconditionError("adapted basis elements are dependent");
    s_->inverse[d] = std::move(*inv);
  }
}

PbwStraightener::~PbwStraightener() = default;
PbwStraightener::PbwStraightener(PbwStraightener&&) noexcept = default;
PbwStraightener& PbwStraightener::operator=(PbwStraightener&&) noexcept = default;

const AdaptedBasis& PbwStraightener::basis() const { return s_->basis; }
int PbwStraightener::monomial_degree(const PbwMonomial& m) const { return s_->degree_of(m); }

std::map<int, Rational> PbwStraightener::coordinates(const LieElt& x) const {
  if (x.rank() != s_->basis.rank) throw MismatchError("rank mismatch with the adapted basis");
  return s_->coordinates(x);
}

PbwPoly PbwStraightener::to_pbw(const AssocPoly& p) const {
  if (p.rank() != s_->basis.rank) throw MismatchError("rank mismatch with the adapted basis");
  if (p.degree() > s_->basis.cutoff) throw PreconditionError("polynomial degree exceeds the basis cutoff");
  PbwPoly out;
  for (const auto& [w, c] : p.terms())
    for (const auto& [m, k] : s_->of_monomial(w)) State::add(out, m, c * k);
  return out;
}

AssocPoly PbwStraightener::expand_monomial(const PbwMonomial& m) const {
  {
    std::lock_guard lock(s_->mutex);
    auto it = s_->expand_memo.find(m);
    if (it != s_->expand_memo.end()) return it->second;
  }
  AssocPoly out = AssocPoly::constant(s_->basis.rank, 1);
  for (int p : m) out = out * expand_to_assoc(s_->basis.elements[p]);
  std::lock_guard lock(s_->mutex);
  return s_->expand_memo.emplace(m, std::move(out)).first->second;
}

AssocPoly PbwStraightener::from_pbw(const PbwPoly& p) const {
  AssocPoly out(s_->basis.rank);
  for (const auto& [m, c] : p) out = out + c * expand_monomial(m);
  return out;
}

bool is_graded_ideal(const GradedSubspace& N) {
  for (int d = 1; d < N.cutoff(); ++d) {
    for (const LieElt& n : N.basis(d)) {
      for (int i = 1; i <= N.rank(); ++i) {
        LieElt b = bracket(n, LieElt::generator(N.rank(), i));
        if (!b.is_zero() && !N.degree(d + 1).contains(dense_component(b, d + 1))) return false;
      }
    }
  }
  return true;
}

namespace {
PbwStraightener ideal_straightener(const GradedSubspace& N) {
  if (!is_graded_ideal(N)) throw PreconditionError("N is not an ideal of F up to the cutoff");
  return PbwStraightener(adapted_basis(N, N, N, Orientation::descending));
}
}  // namespace

IdealReducer::IdealReducer(const GradedSubspace& N) : N_(N), pbw_(ideal_straightener(N)) {}

AssocPoly IdealReducer::reduce(const AssocPoly& p) const {
  const AdaptedBasis& B = pbw_.basis();
  PbwPoly kept;
  for (const auto& [m, c] : pbw_.to_pbw(p)) {
    bool touches_n = std::any_of(m.begin(), m.end(), [&](int pos) { return B.blocks[pos] == Block::a; });
    if (!touches_n) kept.emplace(m, c);
  }
  return pbw_.from_pbw(kept);
}

AssocPoly reduce_mod_ideal(const AssocPoly& p, const GradedSubspace& N) { return IdealReducer(N).reduce(p); }

}  // namespace fox
