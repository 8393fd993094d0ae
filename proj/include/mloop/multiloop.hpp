#ifndef MLOOP_MULTILOOP_HPP
#define MLOOP_MULTILOOP_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "mloop/autos.hpp"
#include "mloop/laurent.hpp"
#include "mloop/liealg.hpp"

namespace mloop {

/// Everything the loop algebra L(g; sigma_1..sigma_N) is built from: the
/// base algebra, the twisting family, and the induced grading of g.
struct LoopContext {
  std::shared_ptr<const ChevalleyAlgebra> algebra;
  AutomorphismFamily family;
  GradedDecomposition grading;

  std::size_t vars() const { return family.size(); }
};

LoopContext make_loop_context(std::shared_ptr<const ChevalleyAlgebra> algebra,
                              AutomorphismFamily family);

/// Structural equality: same series/rank, same declared orders and
/// primitive roots, same member matrices.
bool same_context(const LoopContext& a, const LoopContext& b);

/// Points must have one nonzero coordinate per loop variable.
void check_points(const LoopContext& ctx,
                  const std::vector<TorusPoint>& points);

/// An element of L: finitely many terms x_k (x) t^k with x_k in the graded
/// component g_kbar of the exponent's class. Terms are merged and nonzero.
struct MultiloopElement {
  std::size_t vars = 0;
  std::map<std::vector<long>, VecC> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const MultiloopElement&,
                         const MultiloopElement&) = default;
};

/// Validates raw terms: merges duplicates, drops zeros, and checks each
/// surviving vector against the span of its class basis (NotHomogeneous).
MultiloopElement element_check(
    const LoopContext& ctx,
    const std::vector<std::pair<std::vector<long>, VecC>>& raw);

/// x (x) f, expanded into monomial terms and validated. Only legal when
/// every monomial class of f matches the class of x.
MultiloopElement element_from(const LoopContext& ctx, const VecC& x,
                              const LaurentPoly& f);

/// Bilinear extension of [(k, x), (l, y)] = (k + l, [x, y]).
MultiloopElement bracket_multiloop(const LoopContext& ctx,
                                   const MultiloopElement& x,
                                   const MultiloopElement& y);

/// The evaluation map psi: component i is sum over terms of (p_i^k) x_k.
std::vector<VecC> psi_evaluate(const LoopContext& ctx,
                               const MultiloopElement& x,
                               const std::vector<TorusPoint>& points);

/// True iff psi_evaluate vanishes in every slot.
bool kernel_membership(const LoopContext& ctx, const MultiloopElement& x,
                       const std::vector<TorusPoint>& points);

/// The element decomposed into coefficient polynomials along the
/// homogeneous basis: (class, basis position) -> polynomial in R_class.
std::map<std::pair<std::vector<unsigned>, std::size_t>, LaurentPoly>
coefficient_polynomials(const LoopContext& ctx, const MultiloopElement& x);

/// Rank of psi restricted to the span of all homogeneous terms v (x) t^k
/// with |k_i| <= window. Stabilizes at r * dim g once the window covers the
/// interpolation idempotents (r * max order) when m-values are distinct.
std::size_t kernel_codimension_window(const LoopContext& ctx,
                                      const std::vector<TorusPoint>& points,
                                      unsigned window);

/// An element psi maps to x in the given slot and to zero in all others;
/// x must lie in the component of class reduce_mod(k). Built as
/// a_slot^{-k} x (x) t^k f_slot from the interpolation idempotents.
MultiloopElement surjectivity_witness(const LoopContext& ctx,
                                      const std::vector<TorusPoint>& points,
                                      std::size_t slot,
                                      const std::vector<long>& k,
                                      const VecC& x);

}  // namespace mloop

#endif
