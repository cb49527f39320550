#pragma once

// Fox derivatives on Z(F) and the membership criteria built on them.
//
// Convention: derivatives act on the right of the remaining word,
//   D(uv) = D(u) v + eps(u) D(v),   D_j(g_j) = 1,   D_i(a_i) = a_i - 1,
// so for a word w = l_1 ... l_r we get D(w) = sum_i D(l_i) l_{i+1}...l_r and
//   a - eps(a) = sum_i D_i(a) + sum_j (g_j - 1) D_j(a).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fox/group_ring.hpp"
#include "fox/magnus.hpp"

namespace fox {

struct FoxIndex {
  LetterKind kind = LetterKind::free;
  int index = 1;

  static FoxIndex free(int j) { return {LetterKind::free, j}; }
  static FoxIndex factor(int i) { return {LetterKind::factor, i}; }

  friend auto operator<=>(const FoxIndex&, const FoxIndex&) = default;
};

std::string to_string(const FoxIndex& k);
/// Factor indices first, then free ones.
std::vector<FoxIndex> all_fox_indices(const Alphabet& alphabet);

RingElt fox_derivative(const Word& w, const FoxIndex& k);
RingElt fox_derivative(const RingElt& a, const FoxIndex& k);

struct FundamentalDecomposition {
  Integer constant;
  std::map<FoxIndex, RingElt> parts;
};

FundamentalDecomposition fundamental_decomposition(const RingElt& a);
/// eps(a) + sum_i D_i(a) + sum_j (g_j - 1) D_j(a).
RingElt reassemble(const FundamentalDecomposition& d, const AlphabetPtr& alphabet);

struct SubgroupFoxResult {
  Word f;
  /// D_k(f) computed directly, one entry per index in all_fox_indices order.
  std::vector<RingElt> direct;
  /// sum_k D_j(h_k) theta(partial_k expr), same indexing.
  std::vector<RingElt> via_chain;
  bool chain_check = false;
};

/// `expr` is a word over an alphabet of free rank |base| (symbols h_k); f is
/// expr with h_k replaced by base[k-1]. In the right-acting convention the
/// chain rule reads D_j(f) = sum_k D_j(h_k) * theta(partial_k(expr)).
SubgroupFoxResult subgroup_fox(const std::vector<Word>& base, const Word& expr);

struct CriterionReport {
  bool holds = true;
  std::map<FoxIndex, Residue> residues;  // only nonempty residues are listed
  std::optional<std::string> witness;
  std::string status = "ok";
};

/// Requires v in N. Holds iff every D_k(v) vanishes mod N.
CriterionReport schumann_check(const Word& v, const QuotientOracle& q);

struct Theorem1Report {
  bool holds = true;                     // D_k(v) = 0 mod N for all k outside K
  std::map<FoxIndex, Residue> residues;  // nonzero residues for k outside K
  std::optional<Word> witness;           // v-hat in F_K with v v-hat^-1 in N
  std::string witness_source;            // "retraction" | "search" | "none"
  bool lattice_membership = false;       // v v-hat^-1 in (F_K cap N)^F M
  bool agree = false;
  std::string status = "ok";             // "ok" | "inconclusive-witness" | "no-witness"
};

/// Finite-index q only. `K` may mix free and factor indices.
Theorem1Report theorem1_check(const Word& v, const std::set<FoxIndex>& K, const QuotientOracle& q,
                              int witness_bound = 8);

struct GammaCriterionResult {
  bool holds = false;
  Word vbar;                    // retraction of v onto F_K
  FiltrationWeight residual;    // gamma_weight(v vbar^-1)
  bool retraction_check = false;  // residual >= n+1
  std::string reason;
};

/// v in <F_K, gamma_{n+1}>: D_k(v) in X^n for k outside K and D_k(v) in Z(F_K)
/// modulo X^n for k in K.
GammaCriterionResult subgroup_gamma_criterion(const Word& v, const std::set<int>& K, int n,
                                              int cutoff);

Word escalate_witness(const Word& v, const Word& x2);

struct EscalationReport {
  Word w;
  FiltrationWeight before;  // ideal_weight(D_1 v)
  FiltrationWeight after;   // ideal_weight(D_1 w)
  bool ok = true;           // after <= before + 1 whenever before + 1 <= cutoff
};

EscalationReport escalation_property(const Word& v, const Word& x2, int cutoff);

}  // namespace fox
