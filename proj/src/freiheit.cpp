#include "fox/freiheit.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

namespace fox {

namespace {

GradedSubspace subalphabet_algebra(int rank, int D) {
  std::vector<int> idx(static_cast<std::size_t>(rank - 1));
  std::iota(idx.begin(), idx.end(), 1);
  return GradedSubspace::subalgebra_on(rank, D, idx);
}

bool is_s_monomial(const AdaptedBasis& basis, const PbwMonomial& m) {
  return std::all_of(m.begin(), m.end(), [&](int p) {
    return basis.blocks[static_cast<std::size_t>(p)] == Block::c || basis.blocks[static_cast<std::size_t>(p)] == Block::d;
  });
}

// Standard monomials list d,c elements before b,a ones in the descending order,
// so the S-prefix is the leading run of c/d positions.
PbwMonomial s_prefix(const AdaptedBasis& basis, const PbwMonomial& m) {
  PbwMonomial out;
  for (int p : m) {
    Block b = basis.blocks[static_cast<std::size_t>(p)];
    if (b != Block::c && b != Block::d) break;
    out.push_back(p);
  }
  return out;
}

PbwPoly derivative_pbw(const PbwStraightener& S, const LieElt& x, int j) {
  return S.to_pbw(lie_fox_derivative(expand_to_assoc(x), j));
}

Rational pbw_coefficient(const PbwPoly& p, const PbwMonomial& m) {
  auto it = p.find(m);
  return it == p.end() ? Rational(0) : it->second;
}

}  // namespace

void SeriesSpec::validate() const {
  if (blocks.empty()) throw PreconditionError("series spec needs at least one block");
  for (int m : blocks)
    if (m < 1) throw PreconditionError("block lengths must be >= 1");
  if (root_power < 1) throw PreconditionError("root power must be >= 1");
}

std::string SeriesMember::label() const { return "N_" + std::to_string(k) + "," + std::to_string(l); }

std::vector<SeriesMember> series_components(const SeriesSpec& spec, int rank, int D) {
  spec.validate();
  if (D < 1) throw PreconditionError("cutoff must be >= 1");
  std::vector<SeriesMember> out;
  GradedSubspace head = GradedSubspace::power(rank, D, spec.root_power);
  const int s = static_cast<int>(spec.blocks.size());
  for (int k = 1; k <= s; ++k) {
    GradedSubspace cur = head;
    out.push_back({k, 1, cur});
    const int m = spec.blocks[static_cast<std::size_t>(k - 1)];
    for (int l = 1; l <= m; ++l) {
      cur = bracket_span(cur, head);
      if (l < m || k == s) out.push_back({k, l + 1, cur});
    }
    head = cur;
  }
  return out;
}

GradedSubspace ideal_generated(const LieElt& r, int D) {
  if (r.is_zero()) throw PreconditionError("relator must be nonzero");
  return ideal_closure(GradedSubspace::span(r.rank(), D, {r}));
}

std::string pbw_monomial_to_string(const PbwMonomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k) out += '*';
    out += "e" + std::to_string(m[k]);
  }
  return out;
}

FreeGeneratingSet free_generating_set(const GradedSubspace& B, int D) {
  if (B.cutoff() != D) throw MismatchError("subspace cutoff differs from D");
  const int n = B.rank();
  if (n < 2) throw PreconditionError("rank must be >= 2");
  GradedSubspace BB = bracket_span(B, B);
  if (!B.contains(BB)) throw PreconditionError("B is not bracket-closed up to the cutoff");
  GradedSubspace H = subalphabet_algebra(n, D);

  FreeGeneratingSet out;
  out.basis = adapted_basis(intersect(B, H), B, sum(B, H), Orientation::descending, &H);
  PbwStraightener S(out.basis);

  using Column = std::tuple<int, int, PbwMonomial>;  // priority class, j, M
  auto column_class = [&](int j, const PbwMonomial& m) {
    if (j == n) return 0;
    for (int p : m)
      if (out.basis.blocks[static_cast<std::size_t>(p)] == Block::d) return 1;
    return 2;
  };

  for (int d = 1; d <= D; ++d) {
    // Lower generators produce exactly [B,B]_d; complete it to B_d.
    Echelon lower = BB.degree(d);
    std::vector<LieElt> fresh;
    for (const LieElt& b : B.basis(d))
      if (lower.insert(dense_component(b, d))) fresh.push_back(b);
    if (fresh.empty()) continue;

    std::vector<std::map<Column, Rational>> table(fresh.size());
    std::set<Column> columns;
    for (std::size_t g = 0; g < fresh.size(); ++g) {
      for (int j = 1; j <= n; ++j) {
        PbwPoly dj = derivative_pbw(S, fresh[g], j);
        for (const auto& [m, c] : dj) {
          if (!is_s_monomial(out.basis, m)) continue;
          Column col{column_class(j, m), j, m};
          table[g][col] = c;
          columns.insert(col);
        }
      }
    }
    std::vector<Column> cols(columns.begin(), columns.end());
    const int nc = static_cast<int>(cols.size()), ng = static_cast<int>(fresh.size());
    // Row-reduce [coefficients | identity]: the right half records the
    // invertible recombination of the fresh generators.
    Echelon E(nc + ng);
    for (int g = 0; g < ng; ++g) {
      RVector row(static_cast<std::size_t>(nc + ng));
      for (int c = 0; c < nc; ++c) {
        auto it = table[static_cast<std::size_t>(g)].find(cols[static_cast<std::size_t>(c)]);
        if (it != table[static_cast<std::size_t>(g)].end()) row[static_cast<std::size_t>(c)] = it->second;
      }
      row[static_cast<std::size_t>(nc + g)] = 1;
      E.insert(row);
    }
    for (std::size_t r = 0; r < E.rows().size(); ++r) {
      const RVector& row = E.rows()[r];
      DistinguishedGenerator dg;
      dg.x = LieElt(n);
      for (int g = 0; g < ng; ++g)
        if (row[static_cast<std::size_t>(nc + g)] != 0)
          dg.x = dg.x + row[static_cast<std::size_t>(nc + g)] * fresh[static_cast<std::size_t>(g)];
      dg.degree = d;
      const int p = E.pivots()[r];
      if (p < nc) {
        const auto& [cls, j, m] = cols[static_cast<std::size_t>(p)];
        dg.monomial = m;
        dg.j = j;
        dg.tag_case = cls == 0 ? 1 : (cls == 1 ? 2 : 3);
      }
      out.generators.push_back(std::move(dg));
    }
  }

  std::vector<LieElt> xs;
  for (const auto& g : out.generators) xs.push_back(g.x);
  bool b_zero = true;
  for (int d = 1; d <= D; ++d) b_zero = b_zero && B.dim(d) == 0;
  out.dims_match = xs.empty() ? b_zero : (generated_subalgebra(xs, D) == B && generates_freely(xs, D));

  out.separated = true;
  for (std::size_t i = 0; i < out.generators.size() && out.separated; ++i) {
    const auto& gi = out.generators[i];
    if (!gi.monomial) continue;
    for (std::size_t k = 0; k < out.generators.size(); ++k) {
      Rational c = pbw_coefficient(derivative_pbw(S, out.generators[k].x, gi.j), *gi.monomial);
      if ((k == i) != (c != 0)) {
        out.separated = false;
        break;
      }
    }
  }
  return out;
}

LeadingTermReport leading_term_check(const FreeGeneratingSet& gens, int i, const LieElt& f) {
  const auto& G = gens.generators;
  if (i < 1 || i > static_cast<int>(G.size())) throw PreconditionError("generator index out of range");
  const auto& gi = G[static_cast<std::size_t>(i - 1)];
  if (!gi.monomial) throw PreconditionError("generator carries no tag");
  if (f.rank() != static_cast<int>(G.size())) throw MismatchError("f must live over one letter per generator");
  for (const auto& [w, c] : f.coords())
    for (std::size_t p = 0; p < w.size(); ++p)
      if (G[static_cast<std::size_t>(letter_at(w, p) - 1)].degree > gi.degree)
        throw PreconditionError("f involves a generator of higher degree than x_i");

  std::vector<LieElt> base;
  std::vector<AssocPoly> images;
  for (const auto& g : G) {
    base.push_back(g.x);
    images.push_back(expand_to_assoc(g.x));
  }
  const LieElt r = substitute(f, base);
  const int D = gens.basis.cutoff;
  if (r.degree() > D) throw PreconditionError("theta(f) exceeds the cutoff");

  PbwStraightener S(gens.basis);
  LeadingTermReport out;
  for (const auto& [m, c] : derivative_pbw(S, r, gi.j))
    if (s_prefix(gens.basis, m) == *gi.monomial) out.actual[m] = c;

  const Rational ci = pbw_coefficient(derivative_pbw(S, gi.x, gi.j), *gi.monomial);
  const AssocPoly theta_di = substitute(lie_fox_derivative(expand_to_assoc(f), i), images);
  const AssocPoly M = S.from_pbw(PbwPoly{{*gi.monomial, Rational(1)}});
  if (!theta_di.is_zero()) out.expected = S.to_pbw(ci * (M * theta_di));
  out.holds = out.expected == out.actual;
  return out;
}

CriterionResult lie_criterion(const LieElt& r, const SeriesSpec& spec, int D) {
  if (r.is_zero()) throw PreconditionError("relator must be nonzero");
  const int n = r.rank();
  if (n < 2) throw PreconditionError("rank must be >= 2");
  if (D < r.degree() + 1)
    throw PreconditionError("cutoff too small: need D >= deg r + 1 = " + std::to_string(r.degree() + 1));
  auto members = series_components(spec, n, D);
  if (!members.front().space.member(r)) throw PreconditionError("relator is not in N_1,1");
  std::size_t t = 0;
  while (t + 1 < members.size() && members[t + 1].space.member(r)) ++t;
  if (t + 1 == members.size()) throw PreconditionError("relator lies in the deepest computed member; raise the cutoff");
  if (spec.root_power > 1 && members[t].k > 1)
    throw PreconditionError("filtration level " + members[t].label() + " exceeds the first block m_1 = " +
                            std::to_string(spec.blocks.front()));
  CriterionResult out;
  out.k = members[t].k;
  out.level = members[t].l;
  out.next_label = members[t + 1].label();
  out.satisfied = !sum(subalphabet_algebra(n, D), members[t + 1].space).member(r);
  return out;
}

FreiheitReport lie_freiheitssatz_verify(const LieElt& r, const SeriesSpec& spec, int D) {
  FreiheitReport out;
  out.criterion = lie_criterion(r, spec, D);
  const int n = r.rank();
  const GradedSubspace H = subalphabet_algebra(n, D);
  const GradedSubspace R = ideal_generated(r, D);
  for (const SeriesMember& N : series_components(spec, n, D)) {
    MemberComparison mc;
    mc.k = N.k;
    mc.l = N.l;
    const GradedSubspace X = intersect(H, sum(R, N.space));
    const GradedSubspace Y = intersect(H, N.space);
    for (int d = 1; d <= D; ++d) {
      mc.degrees.push_back({d, X.dim(d), Y.dim(d)});
      if (X.dim(d) == Y.dim(d)) continue;
      mc.equal = false;
      if (!mc.witness)
        for (const LieElt& b : X.basis(d))
          if (!Y.member(b)) {
            mc.witness = b;
            break;
          }
    }
    out.all_equal = out.all_equal && mc.equal;
    out.members.push_back(std::move(mc));
  }
  out.consistent = out.all_equal == out.criterion.satisfied;
  return out;
}

LieElt magnus_leading_lie(const Word& w, int i) {
  const Alphabet& a = *w.alphabet();
  if (a.has_factors()) throw UnsupportedError("free alphabets only");
  AssocPoly p(a.free_rank);
  const TruncSeries s = embed(w, i);
  for (const auto& [m, c] : s.terms())
    if (static_cast<int>(m.size()) == i) p.add_term(m, Rational(c));
  return project_to_lyndon(p);
}

GroupCriterionResult group_criterion_bruteforce(const Word& r, int i, int bound) {
  const AlphabetPtr& alphabet = r.alphabet();
  if (alphabet->has_factors()) throw UnsupportedError("free alphabets only");
  const int n = alphabet->free_rank;
  if (n < 2) throw PreconditionError("rank must be >= 2");
  if (i < 1) throw PreconditionError("i must be >= 1");
  if (bound < 0) throw PreconditionError("search bound must be >= 0");
  const FiltrationWeight w = gamma_weight(r, i);
  if (!w.is_exactly(i))
    throw PreconditionError("r must lie in gamma_" + std::to_string(i) + " minus gamma_" + std::to_string(i + 1) +
                            "; its weight is " + to_string(w));

  GroupCriterionResult out;
  out.leading = magnus_leading_lie(r, i);
  // Conjugation is trivial on gamma_i/gamma_{i+1}, so the class of r is
  // decided by whether its degree-i Lie component lives over y_1..y_{n-1}.
  for (const auto& [m, c] : out.leading.coords())
    if (m.find(static_cast<char>(n)) != Monomial::npos) {
      out.conjugate_found = false;
      out.mode = "lie-component";
      return out;
    }
  out.conjugate_found = true;

  std::vector<int> keep(static_cast<std::size_t>(n - 1));
  std::iota(keep.begin(), keep.end(), 1);
  CyclicReduction cr = cyclically_reduce(r);
  if (cr.core.over_free_indices(keep)) {
    out.witness = std::make_pair(cr.conjugator, cr.core);
    out.mode = "cyclic-reduction";
    return out;
  }

  const TruncSeries key = embed(r, i);
  std::vector<Word> layer{Word(alphabet)};
  std::unordered_set<Word, WordHash> seen{Word(alphabet)};
  for (int len = 0; len <= bound; ++len) {
    for (const Word& h : layer)
      if (embed(h, i) == key) {
        out.witness = std::make_pair(Word(alphabet), h);
        out.mode = "search";
        return out;
      }
    if (len == bound) break;
    std::vector<Word> next;
    for (const Word& h : layer)
      for (int j : keep)
        for (int e : {1, -1}) {
          Word g = h * Word::generator(alphabet, j, e);
          if (g.length() == h.length() + 1 && seen.insert(g).second) next.push_back(std::move(g));
        }
    layer = std::move(next);
  }
  out.mode = "lie-component";
  return out;
}

}  // namespace fox
