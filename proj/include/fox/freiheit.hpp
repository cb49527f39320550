#pragma once

// Polynilpotent series N_{kl} in the free Lie algebra, distinguished free
// generating sets, the Lie freedom-theorem verifier and the group-side
// conjugacy criterion.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fox/fox_lie.hpp"
#include "fox/magnus.hpp"
#include "fox/words.hpp"

namespace fox {

/// N_11 = F (root_power 1) or F_(root_power); blocks m_1..m_s.
struct SeriesSpec {
  std::vector<int> blocks;
  int root_power = 1;

  /// s = 1, m_1 = D.
  static SeriesSpec lower_central(int D) { return SeriesSpec{{D}, 1}; }
  void validate() const;
};

struct SeriesMember {
  int k = 1;
  int l = 1;
  GradedSubspace space;
  std::string label() const;
};

/// N_11 > N_12 > ... > N_{s,m_s+1}; N_{k,m_k+1} is listed once, as N_{k+1,1},
/// except for the last block.
std::vector<SeriesMember> series_components(const SeriesSpec& spec, int rank, int D);

/// id_F(r) truncated at D.
GradedSubspace ideal_generated(const LieElt& r, int D);

struct DistinguishedGenerator {
  LieElt x;
  int degree = 0;
  /// Tag (M(x), j); absent when every D_j(x) avoids the S-monomials.
  std::optional<PbwMonomial> monomial;
  int j = 0;
  /// 1: j = n; 2: M(x) contains a d-element; 3: M(x) built from c-elements only; 0: untagged.
  int tag_case = 0;
};

struct FreeGeneratingSet {
  std::vector<DistinguishedGenerator> generators;
  /// Descending basis adapted to B∩H ⊆ B ⊆ B+H with c drawn from H.
  AdaptedBasis basis;
  /// Generated subalgebra equals B and its dims are the free ones.
  bool dims_match = false;
  /// Re-checked: each tag occurs in its own D_j and in no other generator's.
  bool separated = false;
};

/// Throws PreconditionError when B is not bracket-closed up to D.
FreeGeneratingSet free_generating_set(const GradedSubspace& B, int D);

/// Standard monomial written with basis positions, e.g. "e3*e7".
std::string pbw_monomial_to_string(const PbwMonomial& m);

struct LeadingTermReport {
  bool holds = true;
  PbwPoly expected;  ///< c_i M(x_i) theta(d_i f)
  PbwPoly actual;    ///< the M(x_i)-prefixed part of D_{j_i}(theta f)
};
/// D_{j_i}(theta f) = c_i M(x_i) theta(d_i f) + terms with another S-prefix;
/// f (over rank |generators|) must only involve generators of degree <= deg x_i.
LeadingTermReport leading_term_check(const FreeGeneratingSet& gens, int i, const LieElt& f);

struct CriterionResult {
  int k = 1;
  int level = 1;  ///< r ∈ N_{k,level} \ N_{k,level+1}
  bool satisfied = false;
  std::string next_label;
};
/// Throws PreconditionError when r ∉ N_11, D < deg r + 1, or (for a proper
/// root F_(m)) the level leaves the first block.
CriterionResult lie_criterion(const LieElt& r, const SeriesSpec& spec, int D);

struct DegreeComparison {
  int degree = 0;
  int with_relator = 0;     ///< dim (H∩(R+N))_d
  int without_relator = 0;  ///< dim (H∩N)_d
};
struct MemberComparison {
  int k = 1, l = 1;
  std::vector<DegreeComparison> degrees;
  bool equal = true;
  std::optional<LieElt> witness;  ///< in H∩(R+N) but not in N
};
struct FreiheitReport {
  CriterionResult criterion;
  std::vector<MemberComparison> members;
  bool all_equal = true;
  /// all_equal exactly when the criterion is satisfied.
  bool consistent = true;
};
FreiheitReport lie_freiheitssatz_verify(const LieElt& r, const SeriesSpec& spec, int D);

struct GroupCriterionResult {
  bool conjugate_found = false;
  /// r = u^-1 h u (mod gamma_{i+1}) with h over g_1..g_{n-1}.
  std::optional<std::pair<Word, Word>> witness;
  /// "lie-component", "cyclic-reduction" or "search".
  std::string mode;
  LieElt leading;
};
/// Free alphabet only; r must lie in gamma_i \ gamma_{i+1}.
GroupCriterionResult group_criterion_bruteforce(const Word& r, int i, int bound);

/// Degree-i homogeneous part of embed(w) read as a Lie element over Q.
LieElt magnus_leading_lie(const Word& w, int i);

}  // namespace fox
