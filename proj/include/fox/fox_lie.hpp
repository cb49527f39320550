#pragma once

// Fox derivatives in U(F) = Q<x1..xn>: u = eps(u) + sum_j x_j D_j(u).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "fox/assoc_env.hpp"

namespace fox {

struct LieFoxVector {
  int rank = 0;
  /// Nonzero parts only.
  std::map<int, AssocPoly> parts;
  /// The eps-part (coefficient of the empty word).
  Rational constant = 0;

  AssocPoly part(int j) const;
};

LieFoxVector lie_fox(const AssocPoly& u);
inline LieFoxVector lie_fox(const LieElt& u) { return lie_fox(expand_to_assoc(u)); }
AssocPoly lie_fox_derivative(const AssocPoly& u, int j);
AssocPoly reassemble(const LieFoxVector& d);

/// D_k([u,v]) = D_k(u)v - D_k(v)u for every k.
bool lie_fox_commutator_check(const LieElt& u, const LieElt& v);

/// Subalgebra generated by `base`, up to the cutoff.
GradedSubspace generated_subalgebra(const std::vector<LieElt>& base, int cutoff);
/// Generated dims equal the free Lie dims on the base degrees up to the cutoff.
bool generates_freely(const std::vector<LieElt>& base, int cutoff);
/// theta: h_k -> base[k]; f lives over rank |base|.
LieElt substitute(const LieElt& f, const std::vector<LieElt>& base);
/// Algebra map x_k -> images[k-1].
AssocPoly substitute(const AssocPoly& p, const std::vector<AssocPoly>& images);

struct LieChainReport {
  bool holds = true;
  LieElt theta_f;
  std::vector<AssocPoly> direct;     ///< D_j(theta f), j = 1..n
  std::vector<AssocPoly> via_chain;  ///< sum_k D_j(h_k) theta(d_k f)
};
/// Throws PreconditionError when base is not free up to the cutoff or
/// theta(f) would exceed it.
LieChainReport lie_chain_rule(const std::vector<LieElt>& base, const LieElt& f, int cutoff);
bool lie_chain_rule_check(const std::vector<LieElt>& base, const LieElt& f, int cutoff);

/// A solver precondition failed; `residue` is the canonical nonzero remainder.
class ResidueError : public PreconditionError {
 public:
  ResidueError(const std::string& what, AssocPoly residue)
      : PreconditionError(what), residue_(std::move(residue)) {}
  const AssocPoly& residue() const { return residue_; }

 private:
  AssocPoly residue_;
};

/// Graded ideal N with its reducer and the lazily computed [N,N].
class IdealContext {
 public:
  explicit IdealContext(GradedSubspace N);
  const GradedSubspace& ideal() const { return reducer_.ideal(); }
  const IdealReducer& reducer() const { return reducer_; }
  int rank() const { return ideal().rank(); }
  int cutoff() const { return ideal().cutoff(); }
  const GradedSubspace& commutator() const;

 private:
  IdealReducer reducer_;
  mutable std::once_flag nn_once_;
  mutable std::unique_ptr<GradedSubspace> nn_;
};

struct TheoremDecomposition {
  bool holds = true;
  LieElt v0, v1;
  /// v - v0 - v1 lies in [N,N] (checked only when holds).
  bool certified = false;
  /// k not in K with D_k(v) nonzero mod N_U, and the reduced residue.
  std::map<int, AssocPoly> offending;
};

/// Solvers for fixed K and N. The basis is ascending: a spans F_K∩N,
/// b completes to F_K, c (from N) completes to F_K+N, d completes to F.
class LieFoxSolver {
 public:
  LieFoxSolver(std::shared_ptr<const IdealContext> ctx, std::set<int> K);
  LieFoxSolver(const GradedSubspace& N, std::set<int> K);

  const IdealContext& context() const { return *ctx_; }
  const std::set<int>& K() const { return K_; }
  const PbwStraightener& straightener() const { return *pbw_; }

  /// v in F_K∩N with D_j(v) ≡ u_j mod N_U (j in K); u_j in U(F_K).
  LieElt solve_sigma_zero(const std::map<int, AssocPoly>& u) const;
  /// v in id_F(F_K∩N) with D_j(v) ≡ u_j mod N_U (j in K); u_j in U(F).
  LieElt solve_sigma_zero_ideal(const std::map<int, AssocPoly>& u) const;
  TheoremDecomposition decompose(const LieElt& v) const;

 private:
  AssocPoly sigma(const std::map<int, AssocPoly>& u) const;
  void require_residue_free(const PbwPoly& s) const;

  std::shared_ptr<const IdealContext> ctx_;
  std::set<int> K_;
  std::unique_ptr<PbwStraightener> pbw_;
};

LieElt solve_sigma_zero(const std::map<int, AssocPoly>& u, const std::set<int>& K, const GradedSubspace& N);
LieElt solve_sigma_zero_ideal(const std::map<int, AssocPoly>& u, const std::set<int>& K, const GradedSubspace& N);
TheoremDecomposition theorem_decomposition(const LieElt& v, const std::set<int>& K, const GradedSubspace& N);

struct KharlampovichReport {
  bool derivative_verdict = true;  ///< every D_j(v) ≡ 0 mod N_U
  bool membership = true;          ///< v in [N,N]
  bool agree = true;
  std::map<int, AssocPoly> residues;
};
/// Throws PreconditionError when v is not in N or exceeds the cutoff.
KharlampovichReport kharlampovich_check(const LieElt& v, const IdealContext& ctx);
KharlampovichReport kharlampovich_check(const LieElt& v, const GradedSubspace& N);

}  // namespace fox
