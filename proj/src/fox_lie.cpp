#include "fox/fox_lie.hpp"

#include <algorithm>

namespace fox {

AssocPoly LieFoxVector::part(int j) const {
  auto it = parts.find(j);
  return it == parts.end() ? AssocPoly(rank) : it->second;
}

LieFoxVector lie_fox(const AssocPoly& u) {
  LieFoxVector d;
  d.rank = u.rank();
  for (const auto& [m, c] : u.terms()) {
    if (m.empty()) {
      d.constant = c;
      continue;
    }
    auto [it, inserted] = d.parts.try_emplace(letter_at(m, 0), AssocPoly(u.rank()));
    it->second.add_term(m.substr(1), c);
  }
  return d;
}

AssocPoly lie_fox_derivative(const AssocPoly& u, int j) {
  if (j < 1 || j > u.rank()) throw PreconditionError("derivative index out of range");
  return lie_fox(u).part(j);
}

AssocPoly reassemble(const LieFoxVector& d) {
  AssocPoly out = AssocPoly::constant(d.rank, d.constant);
  for (const auto& [j, p] : d.parts) out = out + AssocPoly::generator(d.rank, j) * p;
  return out;
}

bool lie_fox_commutator_check(const LieElt& u, const LieElt& v) {
  const AssocPoly eu = expand_to_assoc(u), ev = expand_to_assoc(v);
  const LieFoxVector du = lie_fox(eu), dv = lie_fox(ev), duv = lie_fox(poly_commutator(eu, ev));
  if (duv.constant != 0) return false;
  for (int k = 1; k <= u.rank(); ++k)
    if (duv.part(k) != du.part(k) * ev - dv.part(k) * eu) return false;
  return true;
}

GradedSubspace generated_subalgebra(const std::vector<LieElt>& base, int cutoff) {
  if (base.empty()) throw PreconditionError("empty generating set");
  const int rank = base.front().rank();
  GradedSubspace S(rank, cutoff);
  for (const LieElt& g : base) {
    if (g.rank() != rank) throw MismatchError("generators live in different ranks");
    if (g.is_zero() || !g.is_homogeneous()) throw PreconditionError("generators must be nonzero and homogeneous");
  }
  // Left-normed brackets [..[g1,g2]..,gk] span the subalgebra.
  for (int d = 1; d <= cutoff; ++d) {
    Echelon& target = S.degree_mut(d);
    for (const LieElt& g : base)
      if (g.degree() == d) target.insert(dense_component(g, d));
    for (const LieElt& g : base) {
      const int e = g.degree();
      if (e >= d) continue;
      for (const LieElt& s : S.basis(d - e)) target.insert(dense_component(bracket(s, g), d));
    }
  }
  return S;
}

bool generates_freely(const std::vector<LieElt>& base, int cutoff) {
  std::vector<int> degrees;
  for (const LieElt& g : base) degrees.push_back(g.degree());
  auto expected = free_lie_dims(degrees, cutoff);
  GradedSubspace S = generated_subalgebra(base, cutoff);
  for (int d = 1; d <= cutoff; ++d)
    if (Integer(S.dim(d)) != expected[d]) return false;
  return true;
}

namespace {
LieElt substitute_basis(const Monomial& w, const std::vector<LieElt>& base) {
  if (w.size() == 1) return base.at(letter_at(w, 0) - 1);
  auto [u, v] = standard_factorization(w);
  return bracket(substitute_basis(u, base), substitute_basis(v, base));
}
}  // namespace

LieElt substitute(const LieElt& f, const std::vector<LieElt>& base) {
  if (static_cast<int>(base.size()) != f.rank()) throw MismatchError("expression rank must equal the base size");
  if (base.empty()) throw PreconditionError("empty base");
  LieElt out(base.front().rank());
  for (const auto& [w, c] : f.coords()) out = out + c * substitute_basis(w, base);
  return out;
}

AssocPoly substitute(const AssocPoly& p, const std::vector<AssocPoly>& images) {
  if (static_cast<int>(images.size()) != p.rank()) throw MismatchError("need one image per generator");
  if (images.empty()) throw PreconditionError("no images");
  const int target = images.front().rank();
  AssocPoly out(target);
  for (const auto& [m, c] : p.terms()) {
    AssocPoly t = AssocPoly::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) t = t * images[letter_at(m, i) - 1];
    out = out + t;
  }
  return out;
}

LieChainReport lie_chain_rule(const std::vector<LieElt>& base, const LieElt& f, int cutoff) {
  if (base.empty()) throw PreconditionError("empty base");
  if (!generates_freely(base, cutoff)) throw PreconditionError("base does not generate freely up to the cutoff");
  for (const auto& [w, c] : f.coords()) {
    int weight = 0;
    for (std::size_t i = 0; i < w.size(); ++i) weight += base.at(letter_at(w, i) - 1).degree();
    if (weight > cutoff) throw PreconditionError("expression exceeds the cutoff after substitution");
  }
  const int n = base.front().rank();
  LieChainReport rep;
  rep.theta_f = substitute(f, base);
  std::vector<AssocPoly> images;
  for (const LieElt& h : base) images.push_back(expand_to_assoc(h));
  const LieFoxVector df = lie_fox(expand_to_assoc(f));
  std::vector<AssocPoly> partials;
  for (int k = 1; k <= f.rank(); ++k) partials.push_back(substitute(df.part(k), images));
  std::vector<LieFoxVector> dbase;
  for (const AssocPoly& h : images) dbase.push_back(lie_fox(h));
  const LieFoxVector dtheta = lie_fox(expand_to_assoc(rep.theta_f));
  for (int j = 1; j <= n; ++j) {
    AssocPoly chain(n);
    for (std::size_t k = 0; k < base.size(); ++k) chain = chain + dbase[k].part(j) * partials[k];
    rep.holds = rep.holds && chain == dtheta.part(j);
    rep.direct.push_back(dtheta.part(j));
    rep.via_chain.push_back(std::move(chain));
  }
  return rep;
}

bool lie_chain_rule_check(const std::vector<LieElt>& base, const LieElt& f, int cutoff) {
  return lie_chain_rule(base, f, cutoff).holds;
}

IdealContext::IdealContext(GradedSubspace N) : reducer_(N) {}

const GradedSubspace& IdealContext::commutator() const {
  std::call_once(nn_once_, [this] { nn_ = std::make_unique<GradedSubspace>(bracket_span(ideal(), ideal())); });
  return *nn_;
}

namespace {

std::vector<int> sorted_k(const std::set<int>& K, int rank) {
  if (K.empty()) throw PreconditionError("K must be nonempty");
  for (int k : K)
    if (k < 1 || k > rank) throw PreconditionError("index " + std::to_string(k) + " in K out of range");
  return {K.begin(), K.end()};
}

}  // namespace

LieFoxSolver::LieFoxSolver(std::shared_ptr<const IdealContext> ctx, std::set<int> K)
    : ctx_(std::move(ctx)), K_(std::move(K)) {
  const GradedSubspace& N = ctx_->ideal();
  GradedSubspace FK = GradedSubspace::subalgebra_on(N.rank(), N.cutoff(), sorted_k(K_, N.rank()));
  GradedSubspace A = intersect(FK, N), C = sum(FK, N);
  pbw_ = std::make_unique<PbwStraightener>(adapted_basis(A, FK, C, Orientation::ascending, &N));
}

LieFoxSolver::LieFoxSolver(const GradedSubspace& N, std::set<int> K)
    : LieFoxSolver(std::make_shared<IdealContext>(N), std::move(K)) {}

AssocPoly LieFoxSolver::sigma(const std::map<int, AssocPoly>& u) const {
  const int n = ctx_->rank();
  AssocPoly s(n);
  for (const auto& [j, p] : u) {
    if (!K_.count(j)) throw PreconditionError("u_" + std::to_string(j) + " given for an index outside K");
    if (p.rank() != n) throw MismatchError("u_j rank mismatch");
    s = s + AssocPoly::generator(n, j) * p;
  }
  if (s.degree() > ctx_->cutoff()) throw PreconditionError("sum x_j u_j exceeds the cutoff");
  return s;
}

// Standard monomials without a- or c-elements are independent modulo N_U.
void LieFoxSolver::require_residue_free(const PbwPoly& s) const {
  const AdaptedBasis& B = pbw_->basis();
  PbwPoly residue;
  for (const auto& [m, c] : s) {
    bool in_n = std::any_of(m.begin(), m.end(), [&](int p) { return B.blocks[p] == Block::a || B.blocks[p] == Block::c; });
    if (!in_n) residue.emplace(m, c);
  }
  if (!residue.empty()) {
    AssocPoly r = pbw_->from_pbw(residue);
    throw ResidueError("sum x_j u_j is not 0 mod N_U; residue " + to_string(r), r);
  }
}

LieElt LieFoxSolver::solve_sigma_zero(const std::map<int, AssocPoly>& u) const {
  const AdaptedBasis& B = pbw_->basis();
  const PbwPoly s = pbw_->to_pbw(sigma(u));
  require_residue_free(s);
  LieElt v(ctx_->rank());
  for (const auto& [m, c] : s) {
    // a < b, so a monomial of U(F_K) inside N_U starts with its a-elements
    for (int p : m)
      if (B.blocks[p] == Block::c || B.blocks[p] == Block::d)
        throw PreconditionError("u_j must lie in U(F_K)");
    if (B.blocks[m.front()] != Block::a) throw PreconditionError("u_j must lie in U(F_K)");
    std::vector<LieElt> parts;
    for (int p : m) parts.push_back(B.elements[p]);
    v = v + c * left_normed(parts);
  }
  return v;
}

LieElt LieFoxSolver::solve_sigma_zero_ideal(const std::map<int, AssocPoly>& u) const {
  const AdaptedBasis& B = pbw_->basis();
  require_residue_free(pbw_->to_pbw(sigma(u)));
  // u_j ≡ sum_l u_jl f_l with f_l a standard monomial in d-elements
  std::map<PbwMonomial, std::map<int, PbwPoly>> grouped;
  for (const auto& [j, p] : u) {
    for (const auto& [m, c] : pbw_->to_pbw(p)) {
      bool in_n = std::any_of(m.begin(), m.end(), [&](int q) { return B.blocks[q] == Block::a || B.blocks[q] == Block::c; });
      if (in_n) continue;
      auto split = std::find_if(m.begin(), m.end(), [&](int q) { return B.blocks[q] == Block::d; });
      PbwMonomial head(m.begin(), split), tail(split, m.end());
      grouped[tail][j].emplace(std::move(head), c);
    }
  }
  LieElt v(ctx_->rank());
  for (const auto& [tail, parts] : grouped) {
    std::map<int, AssocPoly> ul;
    for (const auto& [j, poly] : parts) ul.emplace(j, pbw_->from_pbw(poly));
    std::vector<LieElt> chain{solve_sigma_zero(ul)};
    for (int p : tail) chain.push_back(B.elements[p]);
    v = v + left_normed(chain);
  }
  return v;
}

TheoremDecomposition LieFoxSolver::decompose(const LieElt& v) const {
  const int n = ctx_->rank();
  if (v.rank() != n) throw MismatchError("rank mismatch");
  if (v.degree() + 1 > ctx_->cutoff()) throw PreconditionError("cutoff must be at least deg v + 1");
  TheoremDecomposition res;
  res.v0 = res.v1 = LieElt(n);
  const LieFoxVector dv = lie_fox(v);
  for (int k = 1; k <= n; ++k) {
    if (K_.count(k)) continue;
    AssocPoly r = ctx_->reducer().reduce(dv.part(k));
    if (!r.is_zero()) {
      res.holds = false;
      res.offending.emplace(k, std::move(r));
    }
  }
  if (!res.holds) return res;
  const AdaptedBasis& B = pbw_->basis();
  LieElt rest(n);
  for (const auto& [p, c] : pbw_->coordinates(v)) {
    if (B.blocks[p] == Block::a || B.blocks[p] == Block::b)
      res.v0 = res.v0 + c * B.elements[p];
    else if (B.blocks[p] == Block::d)
      throw Error("internal: v has a component outside F_K + N although the criterion holds");
    else
      rest = rest + c * B.elements[p];
  }
  const LieFoxVector dr = lie_fox(rest);
  std::map<int, AssocPoly> u;
  for (int j : K_) u.emplace(j, dr.part(j));
  res.v1 = solve_sigma_zero_ideal(u);
  res.certified = ctx_->commutator().member(v - res.v0 - res.v1);
  return res;
}

LieElt solve_sigma_zero(const std::map<int, AssocPoly>& u, const std::set<int>& K, const GradedSubspace& N) {
  return LieFoxSolver(N, K).solve_sigma_zero(u);
}

LieElt solve_sigma_zero_ideal(const std::map<int, AssocPoly>& u, const std::set<int>& K, const GradedSubspace& N) {
  return LieFoxSolver(N, K).solve_sigma_zero_ideal(u);
}

TheoremDecomposition theorem_decomposition(const LieElt& v, const std::set<int>& K, const GradedSubspace& N) {
  return LieFoxSolver(N, K).decompose(v);
}

KharlampovichReport kharlampovich_check(const LieElt& v, const IdealContext& ctx) {
  if (v.rank() != ctx.rank()) throw MismatchError("rank mismatch");
  if (v.degree() > ctx.cutoff()) throw PreconditionError("cutoff must be at least deg v");
  if (!ctx.ideal().member(v)) throw PreconditionError("v is not in N");
  KharlampovichReport rep;
  const LieFoxVector dv = lie_fox(v);
  for (const auto& [j, p] : dv.parts) {
    AssocPoly r = ctx.reducer().reduce(p);
    if (!r.is_zero()) {
      rep.derivative_verdict = false;
      rep.residues.emplace(j, std::move(r));
    }
  }
  rep.membership = ctx.commutator().member(v);
  rep.agree = rep.membership == rep.derivative_verdict;
  return rep;
}

KharlampovichReport kharlampovich_check(const LieElt& v, const GradedSubspace& N) {
  return kharlampovich_check(v, IdealContext(N));
}

}  // namespace fox
