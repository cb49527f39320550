#pragma once

// Schreier transversals for F/N, Schreier generators, Reidemeister-Schreier
// rewriting and the lattice decision for (F_K cap N)^F M.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "fox/fox_group.hpp"
#include "fox/group_ring.hpp"

namespace fox {

class Transversal {
 public:
  enum class Style { shortlex, alpha_beta };
  enum class ClassKind { alpha, beta };

  /// alpha_beta uses the subalphabet g_1..g_{n-1} (n = free rank). For a
  /// finite-index oracle every coset is enumerated up front and prefix
  /// closure is re-verified; failures throw.
  explicit Transversal(QuotientOracle q, Style style = Style::shortlex);
  ~Transversal();
  Transversal(Transversal&&) noexcept;
  Transversal& operator=(Transversal&&) noexcept;

  const QuotientOracle& oracle() const;
  Style style() const;

  /// Representative of the coset of u. Thread-safe: lookups share a read
  /// lock, cache growth takes the write lock.
  Word representative(const Word& u) const;
  /// alpha: the coset contains a word over the subalphabet.
  ClassKind class_kind(const Word& u) const;

  /// Every representative in shortlex order (finite index only).
  std::vector<Word> representatives() const;
  /// Every immediate prefix of a representative is the representative of its coset.
  bool prefix_closed() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct SchreierGenerator {
  Word s;
  Symbol x;
  Word w;  // s x rep(s x)^-1, never trivial
};

/// x runs over positive free generators and the nontrivial factor elements.
std::vector<SchreierGenerator> schreier_generators(const Transversal& t);

/// Builds s x rep(s x)^-1 for a representative s; throws when it is trivial.
SchreierGenerator make_schreier_generator(const Transversal& t, const Word& s, const Symbol& x);

struct RewriteLetter {
  std::size_t generator;  // index into schreier_generators(t)
  int sign;               // +1 or -1

  friend bool operator==(const RewriteLetter&, const RewriteLetter&) = default;
};

/// Reidemeister-Schreier rewriting of u in N over schreier_generators(t).
std::vector<RewriteLetter> rewrite_in_schreier(const Transversal& t, const Word& u);
Word evaluate_rewrite(const std::vector<SchreierGenerator>& gens,
                      const std::vector<RewriteLetter>& rewritten, const AlphabetPtr& alphabet);

/// D_{j0}(w0) for gen0 = (s, g_{j0}) splits into N-cosets of inverse
/// representatives; the coset of rep(s g_{j0})^-1 must carry exactly the single
/// term rep(s g_{j0})^-1 for gen0 and nothing for any other generator.
bool derivative_leading_term_check(const Transversal& t, const SchreierGenerator& gen0,
                                   const SchreierGenerator& gen);

/// u in (F_K cap N)^F M with M = <(N cap A_i)^F>[N,N], decided in N/[N,N].
bool lattice_membership(const Transversal& t, const Word& u, const std::set<FoxIndex>& K);

}  // namespace fox
