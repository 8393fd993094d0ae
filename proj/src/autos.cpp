#include "mloop/autos.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "mloop/errors.hpp"

namespace mloop {

namespace {

MatC identity_like(const MatC& m) { return MatC::identity(m.rows()); }

bool is_diagonal(const MatC& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && !m(i, j).is_zero()) return false;
  return true;
}

MatC matrix_power(const MatC& m, unsigned k) {
  MatC acc = MatC::identity(m.rows());
  MatC base = m;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    base = base * base;
    k >>= 1u;
  }
  return acc;
}

/// phi preserves brackets iff phi([b_i, b_j]) = [phi(b_i), phi(b_j)] on all
/// basis pairs.
bool preserves_bracket(const ChevalleyAlgebra& g, const MatC& m) {
  const std::size_t d = g.dim();
  std::vector<VecC> cols(d);
  for (std::size_t j = 0; j < d; ++j) cols[j] = m.column(j);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      VecC lhs(d, Cyclo(0));
      for (const auto& [k, c] : g.structure(i, j))
        add_scaled(lhs, cols[k], Cyclo(c));
      VecC rhs = g.bracket(cols[i], cols[j]);
      if (lhs != rhs) return false;
    }
  return true;
}

bool normalizes_cartan(const ChevalleyAlgebra& g, const MatC& m) {
  for (std::size_t j = 0; j < g.rank(); ++j)
    for (std::size_t i = g.rank(); i < g.dim(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

Integer factorial(unsigned k) {
  Integer f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

unsigned automorphism_order(const MatC& m, unsigned bound) {
  const MatC id = identity_like(m);
  if (m == id) return 1;
  if (is_diagonal(m)) {
    unsigned long ord = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto root = m(i, i).as_root_of_unity();
      if (!root) throw OrderNotFound(bound);
      ord = std::lcm(ord, static_cast<unsigned long>(root->first));
      if (ord > bound) throw OrderNotFound(bound);
    }
    return static_cast<unsigned>(ord);
  }
  // a unipotent matrix other than the identity has no finite order
  MatC shifted = m - id;
  MatC p = shifted;
  for (std::size_t k = 1; k < m.rows() && !p.is_zero(); ++k) p = p * shifted;
  if (p.is_zero()) throw OrderNotFound(bound);
  MatC acc = m;
  for (unsigned k = 2; k <= bound; ++k) {
    acc = acc * m;
    if (acc == id) return k;
  }
  throw OrderNotFound(bound);
}

AlgebraAutomorphism check_automorphism(const ChevalleyAlgebra& g, MatC m,
                                       unsigned order_bound) {
  if (m.rows() != g.dim() || m.cols() != g.dim())
    throw DimensionMismatch("automorphism matrix size");
  inverse(m);  // throws NotInvertible on singular input
  if (!preserves_bracket(g, m))
    throw NotBracketPreserving("matrix does not preserve the bracket");
  if (!normalizes_cartan(g, m))
    throw CartanNotNormalized("matrix does not map span(h) to itself");
  unsigned order = automorphism_order(m, order_bound);
  return AlgebraAutomorphism{std::move(m), order};
}

AlgebraAutomorphism make_torus_automorphism(const ChevalleyAlgebra& g,
                                            const std::vector<Cyclo>& values) {
  if (values.size() != g.rank())
    throw RankMismatch("one value per simple root required");
  unsigned long order = 1;
  for (const Cyclo& v : values) {
    auto root = v.as_root_of_unity();
    if (!root) throw NotRootOfUnity(v.to_string() + " is not a root of unity");
    order = std::lcm(order, static_cast<unsigned long>(root->first));
  }
  MatC m(g.dim(), g.dim());
  for (std::size_t i = 0; i < g.rank(); ++i) m(i, i) = Cyclo(1);
  for (std::size_t k = 0; k < g.roots().size(); ++k) {
    Cyclo scalar(1);
    const auto& beta = g.roots()[k];
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (beta[i] != 0) scalar *= values[i].pow(beta[i]);
    m(g.rank() + k, g.rank() + k) = scalar;
  }
  return AlgebraAutomorphism{std::move(m), static_cast<unsigned>(order)};
}

AlgebraAutomorphism make_diagram_lift(const ChevalleyAlgebra& g,
                                      const DiagramAutomorphism& d) {
  g.diagram_automorphism(d.perm);  // validate against the Cartan matrix
  const std::size_t r = g.rank(), dim = g.dim();
  auto unit = [&](std::size_t i) {
    VecQ v(dim, Rational(0));
    v[i] = 1;
    return v;
  };

  // spanning set: h_i plus bracket words v_beta = [e_i, v_{beta - alpha_i}];
  // the image of a word is the same word in the permuted generators
  std::vector<VecQ> sources, images;
  for (std::size_t i = 0; i < r; ++i) {
    sources.push_back(unit(i));
    images.push_back(unit(d.perm[i]));
  }

  std::vector<std::vector<long>> positive;
  for (const auto& beta : g.roots()) {
    bool pos = true;
    for (long c : beta)
      if (c < 0) pos = false;
    if (pos) positive.push_back(beta);
  }
  auto height = [](const std::vector<long>& beta) {
    long h = 0;
    for (long c : beta) h += c;
    return h;
  };
  std::sort(positive.begin(), positive.end(),
            [&](const auto& a, const auto& b) {
              return std::pair(height(a), a) < std::pair(height(b), b);
            });

  std::map<std::vector<long>, std::pair<VecQ, VecQ>> word;  // root -> (v, phi v)
  for (const auto& beta : positive) {
    if (height(beta) == 1) {
      std::size_t i = 0;
      while (beta[i] == 0) ++i;
      word[beta] = {unit(g.e_index(i)), unit(g.e_index(d.perm[i]))};
      std::vector<long> neg(beta.size(), 0);
      neg[i] = -1;
      word[neg] = {unit(g.f_index(i)), unit(g.f_index(d.perm[i]))};
      continue;
    }
    bool built = false;
    for (std::size_t i = 0; i < r && !built; ++i) {
      if (beta[i] == 0) continue;
      std::vector<long> gamma = beta;
      gamma[i] -= 1;
      auto it = word.find(gamma);
      if (it == word.end()) continue;
      VecQ v = g.bracket(unit(g.e_index(i)), it->second.first);
      if (is_zero_vector(v)) continue;
      VecQ w = g.bracket(unit(g.e_index(d.perm[i])), it->second.second);
      word[beta] = {v, w};
      std::vector<long> ngamma(r), nbeta(r);
      for (std::size_t t = 0; t < r; ++t) {
        ngamma[t] = -gamma[t];
        nbeta[t] = -beta[t];
      }
      const auto& neg = word.at(ngamma);
      word[nbeta] = {g.bracket(unit(g.f_index(i)), neg.first),
                     g.bracket(unit(g.f_index(d.perm[i])), neg.second)};
      built = true;
    }
    if (!built)
      throw Error("Internal", "positive root unreachable by bracket words");
  }
  for (const auto& [beta, vw] : word) {
    sources.push_back(vw.first);
    images.push_back(vw.second);
  }
  if (sources.size() != dim)
    throw Error("Internal", "bracket words do not span the algebra");

  Matrix<Rational> v(dim, dim), w(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      v(i, j) = sources[j][i];
      w(i, j) = images[j][i];
    }
  MatQ phi = w * inverse(v);
  return check_automorphism(g, to_cyclo(phi));
}

AlgebraAutomorphism make_neg_transpose(const ChevalleyAlgebra& g) {
  const std::size_t dim = g.dim();
  MatQ m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    VecQ col = g.coordinates(g.basis_matrix(j).transposed().scaled(-1));
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  return check_automorphism(g, to_cyclo(m));
}

AlgebraAutomorphism make_exp_ad_nilpotent(const ChevalleyAlgebra& g,
                                          const VecC& u) {
  if (u.size() != g.dim()) throw DimensionMismatch("element length");
  const MatC ad = g.ad_matrix(u);
  MatC exp = MatC::identity(g.dim());
  MatC acc = ad;
  for (unsigned k = 1; !acc.is_zero(); ++k) {
    if (k > g.dim())
      throw NotAdNilpotent("adjoint action is not nilpotent");
    exp = exp + acc.scaled(Cyclo(Rational(Integer(1), factorial(k))));
    acc = acc * ad;
  }
  if (!preserves_bracket(g, exp))
    throw Error("Internal", "exponential failed to preserve the bracket");
  unsigned order = (exp == MatC::identity(g.dim())) ? 1 : 0;
  return AlgebraAutomorphism{std::move(exp), order};
}

AlgebraAutomorphism compose(const ChevalleyAlgebra& g,
                            const AlgebraAutomorphism& a,
                            const AlgebraAutomorphism& b) {
  if (a.matrix.rows() != g.dim() || b.matrix.rows() != g.dim())
    throw ContextMismatch("automorphisms live on different algebras");
  MatC m = a.matrix * b.matrix;
  unsigned order = 0;
  try {
    order = automorphism_order(m);
  } catch (const OrderNotFound&) {
    order = 0;  // legitimate for products involving unipotent factors
  }
  return AlgebraAutomorphism{std::move(m), order};
}

AutomorphismFamily make_family(const ChevalleyAlgebra& g,
                               std::vector<AlgebraAutomorphism> members,
                               std::vector<unsigned> orders,
                               std::vector<Cyclo> primitive_roots) {
  if (members.empty()) throw InvalidFamily("at least one automorphism needed");
  if (members.size() != orders.size() ||
      members.size() != primitive_roots.size())
    throw InvalidFamily("members, orders and roots must have equal length");
  for (const auto& m : members)
    if (m.matrix.rows() != g.dim() || m.matrix.cols() != g.dim())
      throw ContextMismatch("family member on the wrong algebra");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (orders[i] == 0) throw InvalidFamily("orders must be positive");
    bool annihilates = (members[i].order != 0)
                           ? orders[i] % members[i].order == 0
                           : matrix_power(members[i].matrix, orders[i]) ==
                                 MatC::identity(g.dim());
    if (!annihilates)
      throw InvalidFamily("declared order " + std::to_string(orders[i]) +
                          " is not a multiple of the true order");
    auto root = primitive_roots[i].as_root_of_unity();
    if (!root || root->first != orders[i])
      throw InvalidFamily("xi_" + std::to_string(i + 1) +
                          " is not a primitive root of the declared order");
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!(members[i].matrix * members[j].matrix ==
            members[j].matrix * members[i].matrix))
        throw InvalidFamily("automorphisms do not commute");
  return AutomorphismFamily{std::move(members), std::move(orders),
                            std::move(primitive_roots)};
}

AutomorphismFamily make_family(const ChevalleyAlgebra& g,
                               std::vector<AlgebraAutomorphism> members,
                               std::vector<unsigned> orders) {
  std::vector<Cyclo> roots;
  roots.reserve(orders.size());
  for (unsigned m : orders) {
    if (m == 0) throw InvalidFamily("orders must be positive");
    roots.push_back(Cyclo::zeta(m));
  }
  return make_family(g, std::move(members), std::move(orders),
                     std::move(roots));
}

GradedDecomposition common_eigenspaces(const ChevalleyAlgebra& g,
                                       const AutomorphismFamily& fam) {
  const std::size_t d = g.dim();
  struct Piece {
    std::vector<unsigned> index;
    std::vector<VecC> vecs;
  };
  std::vector<Piece> pieces{{{}, {}}};
  for (std::size_t i = 0; i < d; ++i) {
    VecC v(d, Cyclo(0));
    v[i] = Cyclo(1);
    pieces[0].vecs.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < fam.size(); ++j) {
    const MatC& mj = fam.members[j].matrix;
    std::vector<Piece> next;
    for (Piece& piece : pieces) {
      const std::size_t width = piece.vecs.size();
      std::size_t found = 0;
      for (unsigned k = 0; k < fam.orders[j]; ++k) {
        Cyclo eigen = fam.primitive_roots[j].pow(k);
        MatC restricted(d, width);
        for (std::size_t w = 0; w < width; ++w) {
          VecC img = mj * piece.vecs[w];
          for (std::size_t i = 0; i < d; ++i)
            restricted(i, w) = img[i] - eigen * piece.vecs[w][i];
        }
        std::vector<VecC> sols = nullspace(restricted);
        if (sols.empty()) continue;
        Piece sub;
        sub.index = piece.index;
        sub.index.push_back(k);
        for (const VecC& x : sols) {
          VecC v(d, Cyclo(0));
          for (std::size_t w = 0; w < width; ++w)
            if (!x[w].is_zero()) add_scaled(v, piece.vecs[w], x[w]);
          sub.vecs.push_back(std::move(v));
        }
        found += sub.vecs.size();
        next.push_back(std::move(sub));
      }
      if (found != width)
        throw Error("Internal", "family member failed to diagonalize");
    }
    pieces = std::move(next);
  }

  GradedDecomposition out;
  out.group_orders = fam.orders;
  std::vector<unsigned> idx(fam.size(), 0);
  do {
    out.components.emplace(idx, std::vector<VecC>{});  // every class appears
  } while (next_multi_index(idx, fam.orders));
  std::size_t total = 0;
  for (Piece& piece : pieces) {
    // exactness audit: sigma_i v = xi_i^{k_i} v for every returned vector
    for (const VecC& v : piece.vecs)
      for (std::size_t j = 0; j < fam.size(); ++j) {
        VecC img = fam.members[j].matrix * v;
        VecC want = v;
        Cyclo eigen = fam.primitive_roots[j].pow(piece.index[j]);
        for (auto& c : want) c *= eigen;
        if (img != want)
          throw Error("Internal", "eigenvector audit failed");
      }
    total += piece.vecs.size();
    out.components[piece.index] = std::move(piece.vecs);
  }
  if (total != d)
    throw Error("Internal", "graded components do not sum to dim g");
  return out;
}

DiagramAutomorphism outer_part(const ChevalleyAlgebra& g,
                               const AlgebraAutomorphism& s) {
  const std::size_t r = g.rank();
  if (s.matrix.rows() != g.dim()) throw ContextMismatch("wrong algebra");
  if (!normalizes_cartan(g, s.matrix))
    throw CartanNotNormalized("outer part needs an h-normalizing input");
  MatC block(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) block(i, j) = s.matrix(i, j);
  MatC inv = inverse(block);

  // transport a functional on h (given by its values on the h_j) through
  // the inverse: (f o s^{-1})(h_j) = sum_k inv(k, j) f(h_k)
  auto transport = [&](const std::vector<Rational>& f) {
    std::vector<Rational> out(r);
    for (std::size_t j = 0; j < r; ++j) {
      Cyclo acc(0);
      for (std::size_t k = 0; k < r; ++k)
        if (f[k] != 0) acc += inv(k, j) * Cyclo(f[k]);
      if (!acc.is_rational())
        throw BaseRecoveryFailed("transported functional is not rational");
      out[j] = acc.rational_value();
    }
    return out;
  };

  // the all-ones vector is strictly dominant, hence regular; its transport
  // pins down the chamber of the transported base
  auto word = g.reflect_to_dominant(transport(std::vector<Rational>(r, 1))).first;

  std::map<std::vector<Rational>, std::size_t> simple_rows;
  for (std::size_t q = 0; q < r; ++q) {
    std::vector<Rational> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = g.cartan_matrix()[q][j];
    simple_rows[row] = q;
  }
  std::vector<std::size_t> perm(r);
  std::vector<bool> used(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Rational> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = g.cartan_matrix()[i][j];
    std::vector<Rational> image = transport(row);
    for (std::size_t letter : word) image = g.reflect(std::move(image), letter);
    auto it = simple_rows.find(image);
    if (it == simple_rows.end() || used[it->second])
      throw BaseRecoveryFailed("walked base does not match the simple roots");
    perm[i] = it->second;
    used[it->second] = true;
  }
  return g.diagram_automorphism(perm);
}

bool next_multi_index(std::vector<unsigned>& idx,
                      const std::vector<unsigned>& orders) {
  for (std::size_t pos = idx.size(); pos-- > 0;) {
    if (++idx[pos] < orders[pos]) return true;
    idx[pos] = 0;
  }
  return false;
}

std::vector<unsigned> reduce_mod(const std::vector<long>& k,
                                 const std::vector<unsigned>& orders) {
  if (k.size() != orders.size()) throw DimensionMismatch("multi-index length");
  std::vector<unsigned> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    long m = static_cast<long>(orders[i]);
    out[i] = static_cast<unsigned>(((k[i] % m) + m) % m);
  }
  return out;
}

}  // namespace mloop
