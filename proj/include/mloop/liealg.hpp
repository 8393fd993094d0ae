#ifndef MLOOP_LIEALG_HPP
#define MLOOP_LIEALG_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mloop/linalg.hpp"

namespace mloop {

enum class Series { A, B, C, D };

Series series_from_letter(char c);  // throws UnsupportedSeries
char series_letter(Series s);

/// A weight in fundamental coordinates: coords[i] is the value on the i-th
/// simple coroot. Dominant integral weights have nonnegative integer coords.
struct Weight {
  std::vector<Rational> coords;
  friend bool operator==(const Weight&, const Weight&) = default;
};

/// A symmetry of the Dynkin diagram, stored as a 0-based permutation of the
/// simple roots. Valid ones preserve the Cartan matrix; construct through
/// ChevalleyAlgebra::diagram_automorphism to get that checked.
struct DiagramAutomorphism {
  std::vector<std::size_t> perm;
  friend bool operator==(const DiagramAutomorphism&,
                         const DiagramAutomorphism&) = default;

  bool is_identity() const {
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (perm[i] != i) return false;
    return true;
  }
};

/// (g . h)(i) = g(h(i)): apply h first, then g.
DiagramAutomorphism compose(const DiagramAutomorphism& g,
                            const DiagramAutomorphism& h);
DiagramAutomorphism inverse(const DiagramAutomorphism& g);

struct TriangularDecomposition {
  std::vector<std::vector<long>> positive_roots;  // simple-root coordinates
  std::vector<std::size_t> n_plus;                // basis indices
  std::vector<std::size_t> cartan;
  std::vector<std::size_t> n_minus;
};

/// A finite-dimensional simple Lie algebra of classical type, realized by
/// explicit matrices (traceless for A, bilinear-form preserving with the
/// antidiagonal form for B/C/D so that the diagonal subalgebra is a Cartan).
///
/// Basis layout: indices 0..rank-1 are the simple coroots h_1..h_rank;
/// the remaining indices are root vectors, one per root, ordered by the
/// lexicographic order of their simple-root coordinate vectors. Root vectors
/// for the simple roots and their negatives are the standard generators
/// e_i and f_i, normalized so that [e_i, f_i] = h_i and alpha_i(h_i) = 2.
class ChevalleyAlgebra {
public:
  ChevalleyAlgebra(Series series, std::size_t rank);

  Series series() const { return series_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t matrix_size() const { return msize_; }

  const MatQ& basis_matrix(std::size_t i) const { return basis_[i]; }
  std::size_t e_index(std::size_t i) const;  // basis index of e_{alpha_i}
  std::size_t f_index(std::size_t i) const;

  /// All roots in simple-root coordinates, aligned with basis indices
  /// rank()..dim()-1 (root k sits at basis index rank() + k).
  const std::vector<std::vector<long>>& roots() const { return roots_; }
  std::size_t root_space_index(const std::vector<long>& root) const;

  /// cartan_matrix()[i][j] = alpha_i(h_j).
  const std::vector<std::vector<long>>& cartan_matrix() const {
    return cartan_;
  }

  TriangularDecomposition triangular() const;

  /// Structure constants: [b_i, b_j] = sum over (k, c) of c * b_k.
  const std::vector<std::pair<std::size_t, Rational>>& structure(
      std::size_t i, std::size_t j) const {
    return struct_[i * dim() + j];
  }

  VecQ bracket(const VecQ& x, const VecQ& y) const;
  VecC bracket(const VecC& x, const VecC& y) const;
  MatC ad_matrix(const VecC& x) const;

  /// Coordinates of an explicit realization matrix in the basis.
  VecQ coordinates(const MatQ& m) const;

  bool is_dominant_integral(const Weight& w) const;

  /// lambda composed with (the lift of) a diagram automorphism:
  /// result[i] = lambda[perm[i]].
  Weight weight_precompose_diagram(const Weight& w,
                                   const DiagramAutomorphism& g) const;

  /// Validates that perm preserves the Cartan matrix.
  DiagramAutomorphism diagram_automorphism(
      const std::vector<std::size_t>& perm) const;

  /// Weyl-walks v into the dominant chamber with simple reflections
  /// s_i(v)_j = v_j - A_ij * v_i, picking the smallest negative coordinate
  /// each step. Returns the reflection word (applied left to right) and the
  /// dominant representative.
  std::pair<std::vector<std::size_t>, std::vector<Rational>>
  reflect_to_dominant(std::vector<Rational> v) const;

  /// Applies s_i once.
  std::vector<Rational> reflect(std::vector<Rational> v, std::size_t i) const;

private:
  void build();

  Series series_;
  std::size_t rank_;
  std::size_t msize_;
  std::vector<MatQ> basis_;
  std::vector<std::vector<long>> roots_;
  std::map<std::vector<long>, std::size_t> root_index_;
  std::vector<std::vector<long>> cartan_;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> struct_;
  Echelon<Rational> coord_solver_;  // augmented-column solver for coordinates
};

}  // namespace mloop

#endif
