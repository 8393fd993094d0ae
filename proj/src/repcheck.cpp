#include "mloop/repcheck.hpp"

#include <algorithm>
#include <string>

#include "mloop/errors.hpp"

namespace mloop {

namespace {

/// rho(v) for a coordinate vector v over the algebra basis.
MatC apply_action(const ExplicitModule& mod, const VecC& v) {
  MatC out(mod.dim, mod.dim);
  for (std::size_t b = 0; b < v.size(); ++b)
    if (!v[b].is_zero()) out = out + mod.action[b].scaled(v[b]);
  return out;
}

AlgebraAutomorphism identity_automorphism(const ChevalleyAlgebra& g) {
  AlgebraAutomorphism a;
  a.matrix = MatC::identity(g.dim());
  a.order = 1;
  return a;
}

}  // namespace

ExplicitModule build_sl2_module(unsigned n) {
  const std::size_t d = n + 1;
  MatC h(d, d), f(d, d), e(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    h(k, k) = Cyclo(Rational(static_cast<long>(n) - 2 * static_cast<long>(k)));
    if (k + 1 < d) {
      f(k + 1, k) = Cyclo(1);
      e(k, k + 1) = Cyclo(Rational((k + 1) * (n - k)));
    }
  }
  // algebra basis layout for rank 1: h, f, e
  return ExplicitModule{d, {h, f, e}};
}

ExplicitModule build_An_vector_module(unsigned rank, bool dual) {
  ChevalleyAlgebra g(Series::A, rank);
  ExplicitModule out;
  out.dim = g.matrix_size();
  for (std::size_t b = 0; b < g.dim(); ++b) {
    MatC m = to_cyclo(g.basis_matrix(b));
    out.action.push_back(dual ? m.transposed().scaled(Cyclo(-1)) : m);
  }
  return out;
}

void check_module(const ChevalleyAlgebra& g, const ExplicitModule& mod) {
  if (mod.action.size() != g.dim())
    throw SpecMismatch("module supplies the wrong number of action matrices");
  for (const MatC& m : mod.action)
    if (m.rows() != mod.dim || m.cols() != mod.dim)
      throw SpecMismatch("module action matrix has the wrong shape");
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      MatC lhs(mod.dim, mod.dim);
      for (const auto& [b, c] : g.structure(i, j))
        lhs = lhs + mod.action[b].scaled(Cyclo(c));
      MatC rhs = mod.action[i] * mod.action[j] - mod.action[j] * mod.action[i];
      if (!(lhs == rhs))
        throw SpecMismatch("module violates a structure-constant identity");
    }
}

ExplicitModule module_for_weight(const ChevalleyAlgebra& g, const Weight& w) {
  if (w.coords.size() != g.rank())
    throw SpecMismatch("weight length does not match the algebra rank");
  if (g.series() == Series::A && g.rank() == 1) {
    const Rational& c = w.coords[0];
    if (is_integer(c) && c >= 0)
      return build_sl2_module(static_cast<unsigned>(to_long(numerator(c))));
  }
  if (g.series() == Series::A && g.rank() >= 2) {
    Weight natural, dualw;
    natural.coords.assign(g.rank(), Rational(0));
    dualw.coords.assign(g.rank(), Rational(0));
    natural.coords.front() = 1;
    dualw.coords.back() = 1;
    if (w == natural) return build_An_vector_module(g.rank(), false);
    if (w == dualw) return build_An_vector_module(g.rank(), true);
  }
  throw SpecMismatch("no built-in explicit module carries this weight");
}

EvaluationActionMatrices tensor_evaluation_action(
    const LoopContext& ctx, const std::vector<TorusPoint>& points,
    const std::vector<ExplicitModule>& modules,
    const std::vector<MultiloopElement>& generators) {
  check_points(ctx, points);
  if (modules.size() != points.size())
    throw SpecMismatch("one explicit module per evaluation point is required");
  for (const auto& mod : modules) check_module(*ctx.algebra, mod);

  EvaluationActionMatrices out;
  out.dim = 1;
  for (const auto& mod : modules) out.dim *= mod.dim;

  for (const auto& x : generators) {
    std::vector<VecC> images = psi_evaluate(ctx, x, points);
    MatC total(out.dim, out.dim);
    for (std::size_t i = 0; i < modules.size(); ++i) {
      MatC mi = apply_action(modules[i], images[i]);
      std::size_t before = 1, after = 1;
      for (std::size_t l = 0; l < i; ++l) before *= modules[l].dim;
      for (std::size_t l = i + 1; l < modules.size(); ++l)
        after *= modules[l].dim;
      total = total + kronecker(kronecker(MatC::identity(before), mi),
                                MatC::identity(after));
    }
    out.generators.emplace_back(x, std::move(total));
  }
  return out;
}

EvaluationActionMatrices tensor_evaluation_action(
    const ModuleSpec& spec, const std::vector<ExplicitModule>& modules,
    const std::vector<MultiloopElement>& generators) {
  if (modules.size() != spec.size())
    throw SpecMismatch("one explicit module per spec entry is required");
  const ChevalleyAlgebra& g = *spec.context.algebra;
  for (std::size_t i = 0; i < modules.size(); ++i) {
    check_module(g, modules[i]);
    Weight hw = highest_weight_wrt(g, modules[i], identity_automorphism(g));
    if (!(hw == spec.weights[i]))
      throw SpecMismatch("module at position " + std::to_string(i) +
                         " has the wrong highest weight");
  }
  return tensor_evaluation_action(spec.context, spec.points, modules,
                                  generators);
}

std::vector<MultiloopElement> spanning_generators(const LoopContext& ctx,
                                                  unsigned window) {
  const long w = static_cast<long>(window);
  std::vector<MultiloopElement> out;
  std::vector<long> k(ctx.vars(), -w);
  bool more = true;
  while (more) {
    const auto& basis =
        ctx.grading.components.at(reduce_mod(k, ctx.family.orders));
    for (const VecC& v : basis)
      out.push_back(element_check(ctx, {{k, v}}));
    more = false;
    for (std::size_t j = 0; j < k.size() && !more; ++j) {
      if (k[j] < w) {
        ++k[j];
        more = true;
      } else {
        k[j] = -w;
      }
    }
    if (k.empty()) break;
  }
  return out;
}

bool invariant_subspace_exists(const EvaluationActionMatrices& act) {
  const std::size_t d = act.dim;
  for (std::size_t start = 0; start < d; ++start) {
    Echelon<Cyclo> span;
    std::vector<VecC> work;
    VecC seed(d, Cyclo(0));
    seed[start] = Cyclo(1);
    span.insert(seed);
    work.push_back(std::move(seed));
    while (!work.empty() && span.rank() < d) {
      VecC v = std::move(work.back());
      work.pop_back();
      for (const auto& [x, m] : act.generators) {
        VecC image = m * v;
        if (span.insert(image)) {
          work.push_back(std::move(image));
          if (span.rank() == d) break;
        }
      }
    }
    if (span.rank() < d) return true;
  }
  return false;
}

std::optional<MatC> find_intertwiner(const EvaluationActionMatrices& a1,
                                     const EvaluationActionMatrices& a2) {
  if (a1.generators.size() != a2.generators.size())
    throw SpecMismatch("intertwiner search requires equal generator lists");
  for (std::size_t i = 0; i < a1.generators.size(); ++i)
    if (!(a1.generators[i].first == a2.generators[i].first))
      throw SpecMismatch("intertwiner search requires equal generator lists");
  if (a1.dim != a2.dim) return std::nullopt;
  const std::size_t d = a1.dim;

  // Unknown T flattened row-major; constraints T A = B T per generator.
  MatC sys(a1.generators.size() * d * d, d * d);
  std::size_t row = 0;
  for (std::size_t k = 0; k < a1.generators.size(); ++k) {
    const MatC& A = a1.generators[k].second;
    const MatC& B = a2.generators[k].second;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t q = 0; q < d; ++q) sys(row, i * d + q) += A(q, j);
        for (std::size_t p = 0; p < d; ++p) sys(row, p * d + j) -= B(i, p);
        ++row;
      }
  }
  std::vector<VecC> basis = nullspace(sys);
  if (basis.empty()) return std::nullopt;

  auto reshape = [&](const VecC& flat) {
    MatC t(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t(i, j) = flat[i * d + j];
    return t;
  };
  auto invertible = [&](const MatC& t) { return rank(t) == d; };

  std::vector<MatC> candidates;
  for (const VecC& flat : basis) {
    MatC t = reshape(flat);
    if (invertible(t)) return t;
    candidates.push_back(std::move(t));
  }
  if (candidates.size() == 1) return std::nullopt;

  // The determinant of a combination is a polynomial of total degree at
  // most d, so scanning the grid {0..d}^s is a complete decision procedure.
  const std::size_t s = candidates.size();
  unsigned long grid = 1;
  for (std::size_t i = 0; i < s; ++i) {
    if (grid > 20000)
      throw Error("Internal", "intertwiner solution space too large to scan");
    grid *= d + 1;
  }
  std::vector<unsigned> idx(s, 0);
  std::vector<unsigned> radices(s, static_cast<unsigned>(d + 1));
  bool more = true;
  while (more) {
    MatC t(d, d);
    for (std::size_t i = 0; i < s; ++i)
      if (idx[i] != 0)
        t = t + candidates[i].scaled(Cyclo(Rational(idx[i])));
    if (invertible(t)) return t;
    more = next_multi_index(idx, radices);
  }
  return std::nullopt;
}

Weight highest_weight_wrt(const ChevalleyAlgebra& g, const ExplicitModule& mod,
                          const AlgebraAutomorphism& theta) {
  check_module(g, mod);
  if (theta.matrix.rows() != g.dim())
    throw DimensionMismatch("automorphism does not act on this algebra");

  auto transported = [&](std::size_t basis_index) {
    VecC v(g.dim(), Cyclo(0));
    v[basis_index] = Cyclo(1);
    return apply_action(mod, theta.matrix * v);
  };

  // Common kernel of the transported raising operators.
  MatC stacked(g.rank() * mod.dim, mod.dim);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    MatC e = transported(g.e_index(i));
    for (std::size_t a = 0; a < mod.dim; ++a)
      for (std::size_t b = 0; b < mod.dim; ++b)
        stacked(i * mod.dim + a, b) = e(a, b);
  }
  std::vector<VecC> kernel = nullspace(stacked);
  if (kernel.size() != 1)
    throw NotHighestWeightModule(
        "raising operators do not have a one-dimensional common kernel");
  const VecC& v = kernel.front();
  std::size_t lead = 0;
  while (v[lead].is_zero()) ++lead;

  Weight out;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    VecC image = transported(j) * v;  // coroot j sits at basis index j
    Cyclo value = image[lead] * v[lead].inverse();
    VecC check = v;
    for (auto& c : check) c *= value;
    if (!(image == check))
      throw NotHighestWeightModule(
          "highest vector is not an eigenvector of the transported Cartan");
    if (!value.is_rational())
      throw NotHighestWeightModule(
          "highest weight value is not rational");
    out.coords.push_back(value.rational_value());
  }
  return out;
}

bool oracle_isomorphic(const ModuleSpec& s1, const ModuleSpec& s2) {
  if (!same_context(s1.context, s2.context))
    throw ContextMismatch("specs live over different loop contexts");
  const LoopContext& ctx = s1.context;
  unsigned maxm = 1;
  for (unsigned m : ctx.family.orders) maxm = std::max(maxm, m);
  const unsigned window =
      static_cast<unsigned>(s1.size() + s2.size()) * maxm + 1;
  std::vector<MultiloopElement> gens = spanning_generators(ctx, window);

  std::vector<ExplicitModule> mods1, mods2;
  for (const Weight& w : s1.weights)
    mods1.push_back(module_for_weight(*ctx.algebra, w));
  for (const Weight& w : s2.weights)
    mods2.push_back(module_for_weight(*ctx.algebra, w));

  auto act1 = tensor_evaluation_action(s1, mods1, gens);
  auto act2 = tensor_evaluation_action(s2, mods2, gens);
  return find_intertwiner(act1, act2).has_value();
}

}  // namespace mloop
