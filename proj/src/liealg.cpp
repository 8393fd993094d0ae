#include "mloop/liealg.hpp"

#include <algorithm>
#include <string>

#include "mloop/errors.hpp"

namespace mloop {

Series series_from_letter(char c) {
  switch (c) {
    case 'A': return Series::A;
    case 'B': return Series::B;
    case 'C': return Series::C;
    case 'D': return Series::D;
    default:
      throw UnsupportedSeries(std::string("unsupported series '") + c + "'");
  }
}

char series_letter(Series s) {
  switch (s) {
    case Series::A: return 'A';
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

DiagramAutomorphism compose(const DiagramAutomorphism& g,
                            const DiagramAutomorphism& h) {
  if (g.perm.size() != h.perm.size())
    throw RankMismatch("diagram automorphism composition");
  DiagramAutomorphism r;
  r.perm.resize(g.perm.size());
  for (std::size_t i = 0; i < r.perm.size(); ++i) r.perm[i] = g.perm[h.perm[i]];
  return r;
}

DiagramAutomorphism inverse(const DiagramAutomorphism& g) {
  DiagramAutomorphism r;
  r.perm.resize(g.perm.size());
  for (std::size_t i = 0; i < g.perm.size(); ++i) r.perm[g.perm[i]] = i;
  return r;
}

namespace {

MatQ elementary(std::size_t n, std::size_t i, std::size_t j) {
  MatQ m(n, n);
  m(i, j) = 1;
  return m;
}

MatQ commutator(const MatQ& a, const MatQ& b) { return a * b - b * a; }

VecQ flatten(const MatQ& m) {
  VecQ v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v[i * m.cols() + j] = m(i, j);
  return v;
}

MatQ unflatten(const VecQ& v, std::size_t n) {
  MatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

// If m == c * base for a scalar c, return c; otherwise throw.
Rational scalar_ratio(const MatQ& m, const MatQ& base) {
  for (std::size_t i = 0; i < base.rows(); ++i)
    for (std::size_t j = 0; j < base.cols(); ++j)
      if (base(i, j) != 0) {
        Rational c = m(i, j) / base(i, j);
        if (m == base.scaled(c)) return c;
        throw Error("Internal", "expected scalar multiple");
      }
  throw Error("Internal", "scalar ratio against zero matrix");
}

std::vector<std::vector<long>> expected_cartan(Series s, std::size_t rank) {
  std::vector<std::vector<long>> a(rank, std::vector<long>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) a[i][i] = 2;
  auto edge = [&](std::size_t i, std::size_t j, long vij, long vji) {
    a[i][j] = vij;
    a[j][i] = vji;
  };
  std::size_t chain_end = (s == Series::D) ? rank - 2 : rank - 1;
  for (std::size_t i = 0; i + 1 < chain_end + 1 && i + 1 < rank; ++i)
    if (i + 1 <= chain_end) edge(i, i + 1, -1, -1);
  switch (s) {
    case Series::A:
      break;
    case Series::B:
      if (rank >= 2) edge(rank - 2, rank - 1, -2, -1);
      break;
    case Series::C:
      if (rank >= 2) edge(rank - 2, rank - 1, -1, -2);
      break;
    case Series::D:
      edge(rank - 3, rank - 1, -1, -1);
      break;
  }
  return a;
}

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(Series series, std::size_t rank)
    : series_(series), rank_(rank), msize_(0) {
  switch (series) {
    case Series::A:
      if (rank < 1) throw RankOutOfRange("series A needs rank >= 1");
      msize_ = rank + 1;
      break;
    case Series::B:
      if (rank < 2) throw RankOutOfRange("series B needs rank >= 2");
      msize_ = 2 * rank + 1;
      break;
    case Series::C:
      if (rank < 2) throw RankOutOfRange("series C needs rank >= 2");
      msize_ = 2 * rank;
      break;
    case Series::D:
      if (rank < 3) throw RankOutOfRange("series D needs rank >= 3");
      msize_ = 2 * rank;
      break;
  }
  build();
}

void ChevalleyAlgebra::build() {
  const std::size_t m = msize_, r = rank_;

  // --- the matrix space, cut out of gl_m by linear conditions ---
  MatQ conditions;
  MatQ form(m, m);  // bilinear form for B/C/D, unused for A
  if (series_ == Series::A) {
    conditions = MatQ(1, m * m);
    for (std::size_t i = 0; i < m; ++i) conditions(0, i * m + i) = 1;
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      Rational sign = 1;
      if (series_ == Series::C && i >= r) sign = -1;
      form(i, m - 1 - i) = sign;
    }
    // rows: entries of X^T S + S X as functionals of the entries of X
    conditions = MatQ(m * m, m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j) {
            Rational c = 0;
            if (j == a) c += form(i, b);
            if (j == b) c += form(a, i);
            if (c != 0) conditions(a * m + b, i * m + j) += c;
          }
  }
  std::vector<VecQ> raw = nullspace(conditions);
  const std::size_t dim = raw.size();

  auto in_space = [&](const MatQ& x) {
    if (series_ == Series::A) {
      Rational tr = 0;
      for (std::size_t i = 0; i < m; ++i) tr += x(i, i);
      return tr == 0;
    }
    return (x.transposed() * form + form * x).is_zero();
  };

  // --- standard simple generators ---
  std::vector<MatQ> e(r), f(r), h(r);
  for (std::size_t i = 0; i < r; ++i) {
    switch (series_) {
      case Series::A:
        e[i] = elementary(m, i, i + 1);
        break;
      case Series::B:
        if (i + 1 < r)
          e[i] = elementary(m, i, i + 1) - elementary(m, m - 2 - i, m - 1 - i);
        else
          e[i] = elementary(m, r - 1, r) - elementary(m, r, r + 1);
        break;
      case Series::C:
        if (i + 1 < r)
          e[i] = elementary(m, i, i + 1) - elementary(m, m - 2 - i, m - 1 - i);
        else
          e[i] = elementary(m, r - 1, r);
        break;
      case Series::D:
        if (i + 1 < r)
          e[i] = elementary(m, i, i + 1) - elementary(m, m - 2 - i, m - 1 - i);
        else
          e[i] = elementary(m, r - 2, r) - elementary(m, r - 1, r + 1);
        break;
    }
    if (!in_space(e[i]))
      throw Error("Internal", "simple generator violates the form condition");
    f[i] = e[i].transposed();
    MatQ t = commutator(e[i], f[i]);
    Rational c = scalar_ratio(commutator(t, e[i]), e[i]);
    h[i] = t.scaled(Rational(2) / c);
    f[i] = f[i].scaled(Rational(2) / c);
    if (!(commutator(e[i], f[i]) == h[i]))
      throw Error("Internal", "sl2 triple normalization failed");
  }

  // --- Cartan matrix from the realization, checked against the table ---
  cartan_.assign(r, std::vector<long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Rational c = scalar_ratio(commutator(h[j], e[i]), e[i]);
      if (!is_integer(c)) throw Error("Internal", "non-integer Cartan entry");
      cartan_[i][j] = to_long(numerator(c));
    }
  if (cartan_ != expected_cartan(series_, r))
    throw Error("Internal", "realized Cartan matrix differs from the table");

  // --- raw-coordinate solver over the computed spanning set ---
  Echelon<Rational> raw_solver;
  for (std::size_t k = 0; k < dim; ++k) {
    VecQ aug = raw[k];
    aug.resize(m * m + dim, Rational(0));
    aug[m * m + k] = 1;
    if (!raw_solver.insert(std::move(aug)))
      throw Error("Internal", "raw basis not independent");
  }
  auto raw_coords = [&](const MatQ& x) {
    VecQ aug = flatten(x);
    aug.resize(m * m + dim, Rational(0));
    VecQ res = raw_solver.reduce(std::move(aug));
    for (std::size_t i = 0; i < m * m; ++i)
      if (res[i] != 0)
        throw Error("Internal", "matrix outside the algebra span");
    VecQ out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = -res[m * m + k];
    return out;
  };
  auto from_raw = [&](const VecQ& c) {
    VecQ v(m * m, Rational(0));
    for (std::size_t k = 0; k < dim; ++k)
      if (c[k] != 0) add_scaled(v, raw[k], c[k]);
    return unflatten(v, m);
  };

  // --- ad(h_j) as operators in raw coordinates ---
  std::vector<MatQ> t_ops(r, MatQ(dim, dim));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      VecQ col = raw_coords(commutator(h[j], unflatten(raw[k], m)));
      for (std::size_t i = 0; i < dim; ++i) t_ops[j](i, k) = col[i];
    }

  // --- joint eigenspace decomposition; all eigenvalues lie in [-2, 2] ---
  struct Piece {
    std::vector<long> tuple;
    std::vector<VecQ> vecs;  // raw coordinates
  };
  std::vector<Piece> pieces{{{}, {}}};
  pieces[0].vecs.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    VecQ unit(dim, Rational(0));
    unit[k] = 1;
    pieces[0].vecs.push_back(std::move(unit));
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<Piece> next;
    for (const Piece& piece : pieces) {
      const std::size_t width = piece.vecs.size();
      std::size_t found = 0;
      for (long c = -2; c <= 2; ++c) {
        // nullspace of (T_j - c) restricted to the span of piece.vecs
        MatQ restricted(dim, width);
        for (std::size_t w = 0; w < width; ++w) {
          VecQ img = t_ops[j] * piece.vecs[w];
          for (std::size_t i = 0; i < dim; ++i)
            restricted(i, w) = img[i] - Rational(c) * piece.vecs[w][i];
        }
        std::vector<VecQ> sols = nullspace(restricted);
        if (sols.empty()) continue;
        Piece sub;
        sub.tuple = piece.tuple;
        sub.tuple.push_back(c);
        for (const VecQ& x : sols) {
          VecQ v(dim, Rational(0));
          for (std::size_t w = 0; w < width; ++w)
            if (x[w] != 0) add_scaled(v, piece.vecs[w], x[w]);
          sub.vecs.push_back(std::move(v));
        }
        found += sub.vecs.size();
        next.push_back(std::move(sub));
      }
      if (found != width)
        throw Error("Internal", "eigenvalue outside [-2, 2] in decomposition");
    }
    pieces = std::move(next);
  }

  // --- identify Cartan and roots ---
  const std::vector<long> zero_tuple(r, 0);
  MatQ cartan_t(r, r);  // transpose of the Cartan matrix, for coordinates
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cartan_t(i, j) = cartan_[j][i];

  struct RootEntry {
    std::vector<long> coords;  // simple-root coordinates
    MatQ vec;
  };
  std::vector<RootEntry> entries;
  bool cartan_seen = false;
  for (const Piece& piece : pieces) {
    if (piece.tuple == zero_tuple) {
      if (piece.vecs.size() != r)
        throw Error("Internal", "Cartan piece has wrong dimension");
      cartan_seen = true;
      continue;
    }
    if (piece.vecs.size() != 1)
      throw Error("Internal", "root space not one-dimensional");
    VecQ tup(r);
    for (std::size_t j = 0; j < r; ++j) tup[j] = piece.tuple[j];
    auto coords = solve(cartan_t, tup);
    if (!coords) throw Error("Internal", "root outside the root lattice");
    RootEntry entry;
    entry.coords.resize(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (!is_integer((*coords)[i]))
        throw Error("Internal", "non-integer simple-root coordinate");
      entry.coords[i] = to_long(numerator((*coords)[i]));
    }
    // use the standard generators for simple roots and their negatives,
    // otherwise normalize the first nonzero entry of the realization to 1
    long simple = -1;
    bool negative = false;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<long> unit(r, 0);
      unit[i] = 1;
      if (entry.coords == unit) simple = static_cast<long>(i);
      unit[i] = -1;
      if (entry.coords == unit) {
        simple = static_cast<long>(i);
        negative = true;
      }
    }
    if (simple >= 0) {
      entry.vec = negative ? f[simple] : e[simple];
    } else {
      MatQ v = from_raw(piece.vecs[0]);
      Rational lead;
      bool set = false;
      for (std::size_t i = 0; i < m && !set; ++i)
        for (std::size_t j = 0; j < m && !set; ++j)
          if (v(i, j) != 0) {
            lead = v(i, j);
            set = true;
          }
      entry.vec = v.scaled(Rational(1) / lead);
    }
    entries.push_back(std::move(entry));
  }
  if (!cartan_seen) throw Error("Internal", "missing Cartan piece");
  if (entries.size() + r != dim)
    throw Error("Internal", "root count mismatch");

  std::sort(entries.begin(), entries.end(),
            [](const RootEntry& a, const RootEntry& b) {
              return a.coords < b.coords;
            });

  basis_.clear();
  basis_.reserve(dim);
  for (std::size_t i = 0; i < r; ++i) basis_.push_back(h[i]);
  roots_.clear();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    roots_.push_back(entries[k].coords);
    root_index_[entries[k].coords] = r + k;
    basis_.push_back(entries[k].vec);
  }

  // --- final coordinate solver and structure constants ---
  for (std::size_t k = 0; k < dim; ++k) {
    VecQ aug = flatten(basis_[k]);
    aug.resize(m * m + dim, Rational(0));
    aug[m * m + k] = 1;
    if (!coord_solver_.insert(std::move(aug)))
      throw Error("Internal", "final basis not independent");
  }

  struct_.assign(dim * dim, {});
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      VecQ c = coordinates(commutator(basis_[i], basis_[j]));
      for (std::size_t k = 0; k < dim; ++k) {
        if (c[k] == 0) continue;
        struct_[i * dim + j].emplace_back(k, c[k]);
        struct_[j * dim + i].emplace_back(k, -c[k]);
      }
    }
}

VecQ ChevalleyAlgebra::coordinates(const MatQ& x) const {
  const std::size_t mm = msize_ * msize_, dim = basis_.size();
  VecQ aug = flatten(x);
  aug.resize(mm + dim, Rational(0));
  VecQ res = coord_solver_.reduce(std::move(aug));
  for (std::size_t i = 0; i < mm; ++i)
    if (res[i] != 0) throw Error("Internal", "matrix outside the algebra");
  VecQ out(dim);
  for (std::size_t k = 0; k < dim; ++k) out[k] = -res[mm + k];
  return out;
}

std::size_t ChevalleyAlgebra::e_index(std::size_t i) const {
  std::vector<long> unit(rank_, 0);
  unit[i] = 1;
  return root_space_index(unit);
}

std::size_t ChevalleyAlgebra::f_index(std::size_t i) const {
  std::vector<long> unit(rank_, 0);
  unit[i] = -1;
  return root_space_index(unit);
}

std::size_t ChevalleyAlgebra::root_space_index(
    const std::vector<long>& root) const {
  auto it = root_index_.find(root);
  if (it == root_index_.end())
    throw Error("Domain", "not a root of this algebra");
  return it->second;
}

TriangularDecomposition ChevalleyAlgebra::triangular() const {
  TriangularDecomposition t;
  for (std::size_t i = 0; i < rank_; ++i) t.cartan.push_back(i);
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    bool positive = true;
    for (long c : roots_[k])
      if (c < 0) positive = false;
    if (positive) {
      t.positive_roots.push_back(roots_[k]);
      t.n_plus.push_back(rank_ + k);
    } else {
      t.n_minus.push_back(rank_ + k);
    }
  }
  return t;
}

namespace {

template <typename T>
std::vector<T> bracket_impl(
    const std::vector<std::vector<std::pair<std::size_t, Rational>>>& table,
    std::size_t dim, const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != dim || y.size() != dim)
    throw DimensionMismatch("bracket operand length");
  std::vector<T> out(dim, T(0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == T(0)) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j] == T(0)) continue;
      T prod = x[i] * y[j];
      for (const auto& [k, c] : table[i * dim + j]) out[k] += prod * T(c);
    }
  }
  return out;
}

}  // namespace

VecQ ChevalleyAlgebra::bracket(const VecQ& x, const VecQ& y) const {
  return bracket_impl(struct_, dim(), x, y);
}

VecC ChevalleyAlgebra::bracket(const VecC& x, const VecC& y) const {
  return bracket_impl(struct_, dim(), x, y);
}

MatC ChevalleyAlgebra::ad_matrix(const VecC& x) const {
  const std::size_t d = dim();
  MatC ad(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == Cyclo(0)) continue;
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, c] : struct_[i * d + j])
        ad(k, j) += x[i] * Cyclo(c);
  }
  return ad;
}

bool ChevalleyAlgebra::is_dominant_integral(const Weight& w) const {
  if (w.coords.size() != rank_)
    throw RankMismatch("weight has wrong number of coordinates");
  for (const Rational& c : w.coords)
    if (c < 0 || !is_integer(c)) return false;
  return true;
}

Weight ChevalleyAlgebra::weight_precompose_diagram(
    const Weight& w, const DiagramAutomorphism& g) const {
  if (w.coords.size() != rank_ || g.perm.size() != rank_)
    throw RankMismatch("weight/diagram size");
  Weight r;
  r.coords.resize(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r.coords[i] = w.coords[g.perm[i]];
  return r;
}

DiagramAutomorphism ChevalleyAlgebra::diagram_automorphism(
    const std::vector<std::size_t>& perm) const {
  if (perm.size() != rank_) throw RankMismatch("permutation size");
  std::vector<bool> seen(rank_, false);
  for (std::size_t p : perm) {
    if (p >= rank_ || seen[p])
      throw Error("Domain", "not a permutation of the simple roots");
    seen[p] = true;
  }
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j)
      if (cartan_[perm[i]][perm[j]] != cartan_[i][j])
        throw Error("Domain", "permutation does not preserve the Cartan matrix");
  return DiagramAutomorphism{perm};
}

std::vector<Rational> ChevalleyAlgebra::reflect(std::vector<Rational> v,
                                                std::size_t i) const {
  if (v.size() != rank_) throw RankMismatch("reflection operand");
  Rational vi = v[i];
  for (std::size_t j = 0; j < rank_; ++j)
    v[j] -= Rational(cartan_[i][j]) * vi;
  return v;
}

std::pair<std::vector<std::size_t>, std::vector<Rational>>
ChevalleyAlgebra::reflect_to_dominant(std::vector<Rational> v) const {
  if (v.size() != rank_) throw RankMismatch("reflection operand");
  std::vector<std::size_t> word;
  for (std::size_t guard = 0; guard < 1000000; ++guard) {
    std::size_t neg = rank_;
    for (std::size_t i = 0; i < rank_; ++i)
      if (v[i] < 0) {
        neg = i;
        break;
      }
    if (neg == rank_) return {word, v};
    v = reflect(std::move(v), neg);
    word.push_back(neg);
  }
  throw Error("Internal", "dominant chamber walk did not terminate");
}

}  // namespace mloop
