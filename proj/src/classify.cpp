#include "mloop/classify.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mloop/errors.hpp"
#include "mloop/laurent.hpp"

namespace mloop {

namespace {

DiagramAutomorphism identity_diagram(std::size_t rank) {
  DiagramAutomorphism d;
  d.perm.resize(rank);
  std::iota(d.perm.begin(), d.perm.end(), 0);
  return d;
}

DiagramAutomorphism diagram_power(const DiagramAutomorphism& d, long e) {
  DiagramAutomorphism base = e < 0 ? inverse(d) : d;
  long n = e < 0 ? -e : e;
  DiagramAutomorphism acc = identity_diagram(d.perm.size());
  for (long i = 0; i < n; ++i) acc = compose(acc, base);
  return acc;
}

std::vector<DiagramAutomorphism> outer_parts(const LoopContext& ctx) {
  std::vector<DiagramAutomorphism> out;
  out.reserve(ctx.family.size());
  for (const auto& m : ctx.family.members)
    out.push_back(outer_part(*ctx.algebra, m));
  return out;
}

/// Diagram part of sigma_1^{c_1} ... sigma_N^{c_N} for integer exponents c.
DiagramAutomorphism gamma_of(std::size_t rank,
                             const std::vector<DiagramAutomorphism>& outer,
                             const std::vector<long>& c) {
  DiagramAutomorphism acc = identity_diagram(rank);
  for (std::size_t j = 0; j < outer.size(); ++j)
    acc = compose(acc, diagram_power(outer[j], c[j]));
  return acc;
}

bool point_lex_less(const TorusPoint& a, const TorusPoint& b) {
  for (std::size_t j = 0; j < a.coords.size(); ++j) {
    int c = Cyclo::compare(a.coords[j], b.coords[j]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool is_zero_weight(const Weight& w) {
  for (const Rational& c : w.coords)
    if (c != 0) return false;
  return true;
}

void require_same_context(const ModuleSpec& a, const ModuleSpec& b) {
  if (!same_context(a.context, b.context))
    throw ContextMismatch("specs live over different loop contexts");
}

}  // namespace

ModuleSpec normalize_spec(const LoopContext& ctx,
                          const std::vector<Weight>& weights,
                          const std::vector<TorusPoint>& points) {
  if (weights.size() != points.size())
    throw DimensionMismatch("weight and point lists differ in length");
  check_points(ctx, points);
  const std::size_t rank = ctx.algebra->rank();
  ModuleSpec out{ctx, {}, {}};
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].coords.size() != rank)
      throw DimensionMismatch("weight at position " + std::to_string(i) +
                              " has the wrong number of coordinates");
    if (!ctx.algebra->is_dominant_integral(weights[i]))
      throw NotDominantIntegral("weight at position " + std::to_string(i) +
                                " is not dominant integral");
    if (is_zero_weight(weights[i])) continue;
    out.weights.push_back(weights[i]);
    out.points.push_back(points[i]);
    kept.push_back(i);
  }
  std::vector<TorusPoint> mvals;
  mvals.reserve(out.points.size());
  for (const auto& p : out.points)
    mvals.push_back(m_map(p, ctx.family.orders));
  for (std::size_t i = 0; i < mvals.size(); ++i)
    for (std::size_t j = i + 1; j < mvals.size(); ++j)
      if (mvals[i] == mvals[j])
        throw DuplicateEvaluationClass(
            "points at positions " + std::to_string(kept[i]) + " and " +
            std::to_string(kept[j]) + " have equal m-values");
  return out;
}

bool specs_equal(const ModuleSpec& a, const ModuleSpec& b) {
  return same_context(a.context, b.context) && a.weights == b.weights &&
         a.points == b.points;
}

std::optional<IsomorphismWitness> isomorphic(const ModuleSpec& s1,
                                             const ModuleSpec& s2) {
  require_same_context(s1, s2);
  const LoopContext& ctx = s1.context;
  const std::size_t r = s1.size();
  if (r != s2.size()) return std::nullopt;

  std::vector<TorusPoint> mv1, mv2;
  for (const auto& p : s1.points) mv1.push_back(m_map(p, ctx.family.orders));
  for (const auto& p : s2.points) mv2.push_back(m_map(p, ctx.family.orders));

  // The matching permutation is unique because m-values are distinct
  // within each spec.
  std::vector<std::size_t> perm(r);
  std::vector<bool> used(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < r; ++j)
      if (!used[j] && mv1[i] == mv2[j]) {
        perm[i] = j;
        used[j] = true;
        found = true;
        break;
      }
    if (!found) return std::nullopt;
  }

  const auto outer = outer_parts(ctx);
  const std::size_t rank = ctx.algebra->rank();
  IsomorphismWitness w;
  w.perm = perm;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<long> rho(ctx.vars(), 0);
    for (std::size_t j = 0; j < ctx.vars(); ++j) {
      Cyclo ratio = s1.points[i].coords[j] *
                    s2.points[perm[i]].coords[j].inverse();
      bool hit = false;
      for (unsigned c = 0; c < ctx.family.orders[j]; ++c)
        if (ctx.family.primitive_roots[j].pow(c) == ratio) {
          rho[j] = static_cast<long>(c);
          hit = true;
          break;
        }
      if (!hit)
        throw Error("Internal",
                    "point ratio is not a power of the grading root");
    }
    std::vector<long> neg(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) neg[j] = -rho[j];
    DiagramAutomorphism gamma = gamma_of(rank, outer, neg);
    Weight expected =
        ctx.algebra->weight_precompose_diagram(s2.weights[perm[i]], gamma);
    if (!(expected == s1.weights[i])) return std::nullopt;
    w.gammas.push_back(std::move(gamma));
  }
  return w;
}

ModuleSpec act(const GroupElement& g, const ModuleSpec& s) {
  const LoopContext& ctx = s.context;
  const std::size_t r = s.size();
  const std::size_t n = ctx.vars();
  if (g.perm.size() != r || g.rho.size() != r)
    throw Error("Internal", "group element shape does not match the spec");
  std::vector<bool> seen(r, false);
  for (std::size_t i : g.perm) {
    if (i >= r || seen[i])
      throw Error("Internal", "group element permutation is invalid");
    seen[i] = true;
  }
  const auto outer = outer_parts(ctx);
  const std::size_t rank = ctx.algebra->rank();
  ModuleSpec out{ctx, {}, {}};
  for (std::size_t i = 0; i < r; ++i) {
    if (g.rho[i].size() != n)
      throw Error("Internal", "group element exponent tuple is invalid");
    TorusPoint p = s.points[g.perm[i]];
    std::vector<long> neg(n);
    for (std::size_t j = 0; j < n; ++j) {
      unsigned c = g.rho[i][j] % ctx.family.orders[j];
      p.coords[j] *= ctx.family.primitive_roots[j].pow(c);
      neg[j] = -static_cast<long>(c);
    }
    out.points.push_back(std::move(p));
    out.weights.push_back(ctx.algebra->weight_precompose_diagram(
        s.weights[g.perm[i]], gamma_of(rank, outer, neg)));
  }
  return out;
}

std::vector<ModuleSpec> orbit(const ModuleSpec& s, unsigned long bound) {
  const std::size_t r = s.size();
  const auto& orders = s.context.family.orders;

  unsigned long count = 1;
  auto mul_checked = [&](unsigned long f) {
    if (f != 0 && count > bound / f)
      throw EnumerationBoundExceeded(
          "orbit enumeration exceeds the configured bound");
    count *= f;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (unsigned m : orders) mul_checked(m);
  for (std::size_t i = 2; i <= r; ++i) mul_checked(i);

  std::vector<unsigned> radices;
  for (std::size_t i = 0; i < r; ++i)
    radices.insert(radices.end(), orders.begin(), orders.end());

  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<ModuleSpec> out;
  do {
    std::vector<unsigned> idx(radices.size(), 0);
    bool more = true;
    while (more) {
      GroupElement g;
      g.perm = perm;
      g.rho.resize(r);
      for (std::size_t i = 0; i < r; ++i)
        g.rho[i] =
            std::vector<unsigned>(idx.begin() + i * orders.size(),
                                  idx.begin() + (i + 1) * orders.size());
      ModuleSpec t = act(g, s);
      bool fresh = true;
      for (const auto& o : out)
        if (specs_equal(o, t)) {
          fresh = false;
          break;
        }
      if (fresh) out.push_back(std::move(t));
      more = next_multi_index(idx, radices);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

EquivariantMapCanonical canonical_form(const ModuleSpec& s) {
  const LoopContext& ctx = s.context;
  const auto& orders = ctx.family.orders;
  const auto outer = outer_parts(ctx);
  const std::size_t rank = ctx.algebra->rank();
  EquivariantMapCanonical out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<unsigned> idx(orders.size(), 0);
    bool more = true;
    bool first = true;
    TorusPoint best_p;
    Weight best_w;
    while (more) {
      TorusPoint p = s.points[i];
      std::vector<long> neg(orders.size());
      for (std::size_t j = 0; j < orders.size(); ++j) {
        p.coords[j] *= ctx.family.primitive_roots[j].pow(idx[j]);
        neg[j] = -static_cast<long>(idx[j]);
      }
      if (first || point_lex_less(p, best_p)) {
        best_p = std::move(p);
        best_w = ctx.algebra->weight_precompose_diagram(
            s.weights[i], gamma_of(rank, outer, neg));
        first = false;
      }
      more = next_multi_index(idx, orders);
    }
    out.entries.emplace_back(std::move(best_p), std::move(best_w));
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& a, const auto& b) {
              return point_lex_less(a.first, b.first);
            });
  return out;
}

ModuleSpec spec_from_map(const LoopContext& ctx,
                         const EquivariantMapCanonical& map) {
  std::vector<Weight> weights;
  std::vector<TorusPoint> points;
  for (const auto& [p, w] : map.entries) {
    if (is_zero_weight(w))
      throw InvalidEntries("canonical entry carries a zero weight");
    weights.push_back(w);
    points.push_back(p);
  }
  try {
    return normalize_spec(ctx, weights, points);
  } catch (const NotDominantIntegral&) {
    throw InvalidEntries("canonical entry weight is not dominant integral");
  } catch (const DuplicateEvaluationClass&) {
    throw InvalidEntries("canonical entries repeat a point orbit");
  }
}

}  // namespace mloop
