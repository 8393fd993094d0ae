#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mloop/classify.hpp"

namespace mloop {

/// Explicit matrix realization of a module: one action matrix per algebra
/// basis element, satisfying the structure-constant identity.
struct ExplicitModule {
  std::size_t dim = 0;
  std::vector<MatC> action;
};

/// Matrices of multiloop generators acting on a tensor product of explicit
/// modules through evaluation.
struct EvaluationActionMatrices {
  std::size_t dim = 1;
  std::vector<std::pair<MultiloopElement, MatC>> generators;
};

/// Standard (n+1)-dimensional ladder module for the rank-1 algebra.
ExplicitModule build_sl2_module(unsigned n);

/// Natural (rank+1)-dimensional module of the type-A algebra, or its dual.
ExplicitModule build_An_vector_module(unsigned rank, bool dual);

/// Verifies the structure-constant identity on all basis pairs; throws
/// SpecMismatch on violation.
void check_module(const ChevalleyAlgebra& g, const ExplicitModule& mod);

/// Fixture factory: the explicit module with the given highest weight, when
/// one of the built-in families provides it; throws SpecMismatch otherwise.
ExplicitModule module_for_weight(const ChevalleyAlgebra& g, const Weight& w);

/// Evaluates each generator at the points and assembles its matrix on the
/// tensor product of the modules (slot i acts through point i).
EvaluationActionMatrices tensor_evaluation_action(
    const LoopContext& ctx, const std::vector<TorusPoint>& points,
    const std::vector<ExplicitModule>& modules,
    const std::vector<MultiloopElement>& generators);

/// Spec-checked variant: modules must match the spec weights in dimension
/// and highest weight.
EvaluationActionMatrices tensor_evaluation_action(
    const ModuleSpec& spec, const std::vector<ExplicitModule>& modules,
    const std::vector<MultiloopElement>& generators);

/// All homogeneous monomial elements with exponents in [-window, window]^N;
/// their images span the evaluation image once the window passes the
/// stability threshold.
std::vector<MultiloopElement> spanning_generators(const LoopContext& ctx,
                                                  unsigned window);

/// True iff some proper nonzero subspace is invariant under every generator
/// matrix, decided by closing each basis vector's cyclic span.
bool invariant_subspace_exists(const EvaluationActionMatrices& act);

/// Searches for an invertible T with T a1(X) = a2(X) T for all shared
/// generators; returns none when no such map exists.
std::optional<MatC> find_intertwiner(const EvaluationActionMatrices& a1,
                                     const EvaluationActionMatrices& a2);

/// Weight of the unique vector killed by the transported raising operators,
/// expressed on the transported Cartan basis.
Weight highest_weight_wrt(const ChevalleyAlgebra& g, const ExplicitModule& mod,
                          const AlgebraAutomorphism& theta);

/// Brute-force isomorphism verdict: builds both evaluation actions over a
/// shared window generator list and searches for an intertwiner.
bool oracle_isomorphic(const ModuleSpec& s1, const ModuleSpec& s2);

}  // namespace mloop
