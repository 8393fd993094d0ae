#include "mloop/multiloop.hpp"

#include <algorithm>
#include <string>

#include "mloop/errors.hpp"

namespace mloop {

namespace {

std::string class_tag(const std::vector<long>& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(k[i]);
  }
  return s + ")";
}

Cyclo point_power(const TorusPoint& p, const std::vector<long>& k) {
  Cyclo out(1);
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] != 0) out *= p.coords[i].pow(k[i]);
  return out;
}

}  // namespace

LoopContext make_loop_context(std::shared_ptr<const ChevalleyAlgebra> algebra,
                              AutomorphismFamily family) {
  if (!algebra) throw ContextMismatch("missing algebra");
  GradedDecomposition grading = common_eigenspaces(*algebra, family);
  return LoopContext{std::move(algebra), std::move(family),
                     std::move(grading)};
}

bool same_context(const LoopContext& a, const LoopContext& b) {
  if (a.algebra->series() != b.algebra->series() ||
      a.algebra->rank() != b.algebra->rank())
    return false;
  if (a.family.orders != b.family.orders) return false;
  for (std::size_t i = 0; i < a.family.size(); ++i) {
    if (!(a.family.primitive_roots[i] == b.family.primitive_roots[i]))
      return false;
    if (!(a.family.members[i].matrix == b.family.members[i].matrix))
      return false;
  }
  return true;
}

void check_points(const LoopContext& ctx,
                  const std::vector<TorusPoint>& points) {
  for (const auto& p : points) {
    if (p.coords.size() != ctx.vars())
      throw DimensionMismatch("point dimension differs from loop variables");
    for (const auto& c : p.coords)
      if (c.is_zero())
        throw InvalidEntries("torus points need nonzero coordinates");
  }
}

MultiloopElement element_check(
    const LoopContext& ctx,
    const std::vector<std::pair<std::vector<long>, VecC>>& raw) {
  MultiloopElement out;
  out.vars = ctx.vars();
  for (const auto& [k, v] : raw) {
    if (k.size() != ctx.vars())
      throw DimensionMismatch("exponent vector length");
    if (v.size() != ctx.algebra->dim())
      throw DimensionMismatch("coefficient vector length");
    auto [it, inserted] = out.terms.emplace(k, v);
    if (!inserted)
      for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
    if (is_zero_vector(it->second)) out.terms.erase(it);
  }
  for (const auto& [k, v] : out.terms) {
    const auto& basis =
        ctx.grading.components.at(reduce_mod(k, ctx.family.orders));
    Echelon<Cyclo> span;
    for (const VecC& b : basis) span.insert(b);
    if (!span.contains(v))
      throw NotHomogeneous("term at exponent " + class_tag(k) +
                           " lies outside its graded component");
  }
  return out;
}

MultiloopElement element_from(const LoopContext& ctx, const VecC& x,
                              const LaurentPoly& f) {
  if (f.vars() != ctx.vars())
    throw DimensionMismatch("polynomial variable count");
  std::vector<std::pair<std::vector<long>, VecC>> raw;
  for (const auto& [k, c] : f.terms()) {
    VecC v = x;
    for (auto& entry : v) entry *= c;
    raw.emplace_back(k, std::move(v));
  }
  return element_check(ctx, raw);
}

MultiloopElement bracket_multiloop(const LoopContext& ctx,
                                   const MultiloopElement& x,
                                   const MultiloopElement& y) {
  if (x.vars != ctx.vars() || y.vars != ctx.vars())
    throw ContextMismatch("elements from a different loop context");
  for (const MultiloopElement* el : {&x, &y}) {
    std::vector<std::pair<std::vector<long>, VecC>> raw(el->terms.begin(),
                                                        el->terms.end());
    try {
      element_check(ctx, raw);
    } catch (const NotHomogeneous&) {
      throw ContextMismatch("element is not graded for this loop context");
    }
  }
  std::vector<std::pair<std::vector<long>, VecC>> raw;
  for (const auto& [k, xv] : x.terms)
    for (const auto& [l, yv] : y.terms) {
      std::vector<long> sum(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) sum[i] = k[i] + l[i];
      raw.emplace_back(std::move(sum), ctx.algebra->bracket(xv, yv));
    }
  return element_check(ctx, raw);
}

std::vector<VecC> psi_evaluate(const LoopContext& ctx,
                               const MultiloopElement& x,
                               const std::vector<TorusPoint>& points) {
  check_points(ctx, points);
  if (x.vars != ctx.vars())
    throw DimensionMismatch("element from a different loop context");
  std::vector<VecC> out(points.size(),
                        VecC(ctx.algebra->dim(), Cyclo(0)));
  for (const auto& [k, v] : x.terms)
    for (std::size_t i = 0; i < points.size(); ++i)
      add_scaled(out[i], v, point_power(points[i], k));
  return out;
}

bool kernel_membership(const LoopContext& ctx, const MultiloopElement& x,
                       const std::vector<TorusPoint>& points) {
  for (const VecC& slot : psi_evaluate(ctx, x, points))
    if (!is_zero_vector(slot)) return false;
  return true;
}

std::map<std::pair<std::vector<unsigned>, std::size_t>, LaurentPoly>
coefficient_polynomials(const LoopContext& ctx, const MultiloopElement& x) {
  if (x.vars != ctx.vars())
    throw DimensionMismatch("element from a different loop context");
  const std::size_t dim = ctx.algebra->dim();
  // per-class augmented solvers over the component bases
  std::map<std::vector<unsigned>, Echelon<Cyclo>> solvers;
  std::map<std::pair<std::vector<unsigned>, std::size_t>, LaurentPoly> out;
  for (const auto& [k, v] : x.terms) {
    auto kbar = reduce_mod(k, ctx.family.orders);
    const auto& basis = ctx.grading.components.at(kbar);
    auto [it, inserted] = solvers.emplace(kbar, Echelon<Cyclo>{});
    if (inserted)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        VecC aug = basis[j];
        aug.resize(dim + basis.size(), Cyclo(0));
        aug[dim + j] = Cyclo(1);
        it->second.insert(std::move(aug));
      }
    VecC aug = v;
    aug.resize(dim + basis.size(), Cyclo(0));
    VecC res = it->second.reduce(std::move(aug));
    for (std::size_t i = 0; i < dim; ++i)
      if (!res[i].is_zero())
        throw NotHomogeneous("term at exponent " + class_tag(k) +
                             " lies outside its graded component");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Cyclo c = -res[dim + j];
      if (c.is_zero()) continue;
      auto [entry, fresh] =
          out.emplace(std::pair(kbar, j), LaurentPoly(ctx.vars()));
      (void)fresh;
      entry->second.add_term(k, c);
    }
  }
  return out;
}

std::size_t kernel_codimension_window(const LoopContext& ctx,
                                      const std::vector<TorusPoint>& points,
                                      unsigned window) {
  check_points(ctx, points);
  const std::size_t dim = ctx.algebra->dim(), r = points.size();
  const std::size_t target = r * dim;
  if (r == 0) return 0;
  Echelon<Cyclo> image;
  const long w = static_cast<long>(window);
  std::vector<long> k(ctx.vars(), -w);
  bool done = false;
  while (!done) {
    const auto& basis =
        ctx.grading.components.at(reduce_mod(k, ctx.family.orders));
    std::vector<Cyclo> powers(r);
    for (std::size_t i = 0; i < r; ++i) powers[i] = point_power(points[i], k);
    for (const VecC& v : basis) {
      VecC img(target, Cyclo(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < dim; ++j)
          if (!v[j].is_zero()) img[i * dim + j] = powers[i] * v[j];
      image.insert(std::move(img));
      if (image.rank() == target) return target;
    }
    done = true;
    for (std::size_t pos = ctx.vars(); pos-- > 0;) {
      if (++k[pos] <= w) {
        done = false;
        break;
      }
      k[pos] = -w;
    }
  }
  return image.rank();
}

MultiloopElement surjectivity_witness(const LoopContext& ctx,
                                      const std::vector<TorusPoint>& points,
                                      std::size_t slot,
                                      const std::vector<long>& k,
                                      const VecC& x) {
  check_points(ctx, points);
  if (slot >= points.size()) throw DimensionMismatch("slot out of range");
  if (k.size() != ctx.vars())
    throw DimensionMismatch("exponent vector length");
  auto idem = interpolate_idempotents(points, ctx.family.orders);
  LaurentPoly f = LaurentPoly::monomial(k, point_power(points[slot], k).inverse()) *
                  idem[slot];
  return element_from(ctx, x, f);
}

}  // namespace mloop
