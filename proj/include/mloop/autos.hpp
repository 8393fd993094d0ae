#ifndef MLOOP_AUTOS_HPP
#define MLOOP_AUTOS_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "mloop/cyclotomic.hpp"
#include "mloop/liealg.hpp"
#include "mloop/linalg.hpp"

namespace mloop {

/// A Lie algebra automorphism, stored as its matrix on the Chevalley basis.
/// `order` is the multiplicative order of the matrix; 0 means no finite
/// order exists below the search bound (exp(ad u) with u != 0 is unipotent
/// and has none; every other constructor produces a finite order).
struct AlgebraAutomorphism {
  MatC matrix;
  unsigned order = 1;
};

inline constexpr unsigned kOrderSearchBound = 512;

/// Smallest k >= 1 with m^k = 1; throws OrderNotFound past the bound.
/// Diagonal matrices are resolved without powering, and unipotent ones
/// (other than the identity) fail fast.
unsigned automorphism_order(const MatC& m, unsigned bound = kOrderSearchBound);

/// Validates a raw matrix: right size, invertible, bracket-preserving on
/// all basis pairs, maps span(h_1..h_rank) onto itself, finite order.
AlgebraAutomorphism check_automorphism(const ChevalleyAlgebra& g, MatC m,
                                       unsigned order_bound = kOrderSearchBound);

/// Fixes h pointwise and scales each root vector x_beta by the
/// multiplicative extension of the given simple-root values (all must be
/// roots of unity).
AlgebraAutomorphism make_torus_automorphism(const ChevalleyAlgebra& g,
                                            const std::vector<Cyclo>& values);

/// The lift of a diagram symmetry: e_i -> e_{d(i)}, f_i -> f_{d(i)},
/// extended through bracket words.
AlgebraAutomorphism make_diagram_lift(const ChevalleyAlgebra& g,
                                      const DiagramAutomorphism& d);

/// x -> -x^T on the matrix realization (the Chevalley involution).
AlgebraAutomorphism make_neg_transpose(const ChevalleyAlgebra& g);

/// exp(ad u) for an ad-nilpotent u, as an exact finite sum.
AlgebraAutomorphism make_exp_ad_nilpotent(const ChevalleyAlgebra& g,
                                          const VecC& u);

/// Matrix product a.matrix * b.matrix (apply b first, then a).
AlgebraAutomorphism compose(const ChevalleyAlgebra& g,
                            const AlgebraAutomorphism& a,
                            const AlgebraAutomorphism& b);

/// Commuting automorphisms sigma_1..sigma_N with declared orders m_i
/// (each a multiple of the true order) and primitive m_i-th roots xi_i.
struct AutomorphismFamily {
  std::vector<AlgebraAutomorphism> members;
  std::vector<unsigned> orders;
  std::vector<Cyclo> primitive_roots;

  std::size_t size() const { return members.size(); }
};

/// Validates commutation, order divisibility and primitivity of the roots.
AutomorphismFamily make_family(const ChevalleyAlgebra& g,
                               std::vector<AlgebraAutomorphism> members,
                               std::vector<unsigned> orders,
                               std::vector<Cyclo> primitive_roots);

/// Same, with the canonical choice xi_i = zeta(m_i).
AutomorphismFamily make_family(const ChevalleyAlgebra& g,
                               std::vector<AlgebraAutomorphism> members,
                               std::vector<unsigned> orders);

/// g = direct sum of g_kbar over kbar in Z/m_1 x ... x Z/m_N, where
/// sigma_i acts on g_kbar by xi_i^{k_i}. Every kbar appears as a key,
/// possibly with an empty basis.
struct GradedDecomposition {
  std::vector<unsigned> group_orders;
  std::map<std::vector<unsigned>, std::vector<VecC>> components;
};

GradedDecomposition common_eigenspaces(const ChevalleyAlgebra& g,
                                       const AutomorphismFamily& fam);

/// The diagram-symmetry class of an h-normalizing automorphism: transports
/// the base by the induced map on h*, walks it back into the dominant
/// chamber, and reads off the resulting permutation of the simple roots.
DiagramAutomorphism outer_part(const ChevalleyAlgebra& g,
                               const AlgebraAutomorphism& s);

/// Advances a multi-index in the box prod [0, orders_i); returns false
/// after the last one wraps back to all zeros.
bool next_multi_index(std::vector<unsigned>& idx,
                      const std::vector<unsigned>& orders);

/// Componentwise reduction of an integer vector mod the group orders.
std::vector<unsigned> reduce_mod(const std::vector<long>& k,
                                 const std::vector<unsigned>& orders);

}  // namespace mloop

#endif
