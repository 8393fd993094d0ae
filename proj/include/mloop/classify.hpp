#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mloop/multiloop.hpp"

namespace mloop {

/// Validated description of a finite-dimensional evaluation module over a
/// loop context: nonzero dominant integral weights paired with evaluation
/// points whose m-values are pairwise distinct.  An empty spec denotes the
/// one-dimensional trivial module.
struct ModuleSpec {
  LoopContext context;
  std::vector<Weight> weights;
  std::vector<TorusPoint> points;

  std::size_t size() const { return weights.size(); }
};

/// Element of the wreath-type group acting on module descriptions: one
/// grading-group exponent tuple per tensor slot, plus a slot permutation.
struct GroupElement {
  std::vector<std::vector<unsigned>> rho;  ///< rho[i][j] reduced mod order j
  std::vector<std::size_t> perm;           ///< slot i draws from slot perm[i]
};

/// Witness for a positive isomorphism verdict: the slot matching and the
/// diagram automorphism twisting each weight.
struct IsomorphismWitness {
  std::vector<std::size_t> perm;
  std::vector<DiagramAutomorphism> gammas;
};

/// Canonical form attached to an isomorphism class: sorted pairs of
/// (lex-minimal orbit representative, transported weight).
struct EquivariantMapCanonical {
  std::vector<std::pair<TorusPoint, Weight>> entries;

  friend bool operator==(const EquivariantMapCanonical&,
                         const EquivariantMapCanonical&) = default;
};

/// Validates raw weight/point data and drops pairs with zero weight.
/// Throws NotDominantIntegral or DuplicateEvaluationClass.
ModuleSpec normalize_spec(const LoopContext& ctx,
                          const std::vector<Weight>& weights,
                          const std::vector<TorusPoint>& points);

/// Exact equality of specs over structurally equal contexts.
bool specs_equal(const ModuleSpec& a, const ModuleSpec& b);

/// Decides isomorphism of the modules described by two normalized specs;
/// returns the (unique) witness on success.
std::optional<IsomorphismWitness> isomorphic(const ModuleSpec& s1,
                                             const ModuleSpec& s2);

/// Applies a group element to a spec: points move by root-of-unity scaling
/// of their permuted sources, weights by the inverse diagram twist.
ModuleSpec act(const GroupElement& g, const ModuleSpec& s);

/// Full orbit of a spec under the wreath-type group, deduplicated.
std::vector<ModuleSpec> orbit(const ModuleSpec& s,
                              unsigned long bound = 200000);

/// Canonical form of the isomorphism class of a spec; equal canonical forms
/// characterize isomorphic specs.
EquivariantMapCanonical canonical_form(const ModuleSpec& s);

/// Rebuilds a spec from canonical-form entries; inverse of canonical_form on
/// canonical inputs.  Throws InvalidEntries on malformed data.
ModuleSpec spec_from_map(const LoopContext& ctx,
                         const EquivariantMapCanonical& map);

}  // namespace mloop
