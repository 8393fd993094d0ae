#ifndef MLOOP_LAURENT_HPP
#define MLOOP_LAURENT_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mloop/cyclotomic.hpp"

namespace mloop {

/// Multivariate Laurent polynomial over the exact field: a finite map from
/// exponent vectors in Z^N to nonzero coefficients. N is fixed per value.
class LaurentPoly {
public:
  explicit LaurentPoly(std::size_t vars = 1) : vars_(vars) {}
  static LaurentPoly constant(std::size_t vars, const Cyclo& c);
  static LaurentPoly monomial(std::vector<long> exp, const Cyclo& c);

  std::size_t vars() const { return vars_; }
  const std::map<std::vector<long>, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates c * t^exp, dropping the term if it cancels to zero.
  void add_term(std::vector<long> exp, const Cyclo& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) {
    a *= b;
    return a;
  }
  LaurentPoly scaled(const Cyclo& c) const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Deterministic printable form, e.g. "(1/5) t^(0) + (-1/5) t^(2)".
  std::string to_string() const;

private:
  std::size_t vars_;
  std::map<std::vector<long>, Cyclo> terms_;
};

/// A point of the N-torus: every coordinate nonzero.
struct TorusPoint {
  std::vector<Cyclo> coords;
  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// Exact evaluation, with negative powers through field inversion.
Cyclo evaluate(const LaurentPoly& f, const TorusPoint& p);

/// Coordinate-wise powers by the declared orders: the invariant of a point
/// that classifies its evaluation ideal.
TorusPoint m_map(const TorusPoint& p, const std::vector<unsigned>& orders);

/// The sub-sum of terms whose exponent vector reduces to kbar mod the
/// orders; the components over all kbar partition f.
LaurentPoly graded_component(const LaurentPoly& f,
                             const std::vector<unsigned>& kbar,
                             const std::vector<unsigned>& orders);

/// Lagrange interpolation in the variables u_c = t_c^{m_c}: returns
/// f_1..f_r in the zero component with evaluate(f_i, points[j]) = delta_ij.
std::vector<LaurentPoly> interpolate_idempotents(
    const std::vector<TorusPoint>& points, const std::vector<unsigned>& orders);

/// The intersection of the maximal ideals at r distinct points of the
/// subring generated by t_i^{+-m_i}; base_points hold the m-map values.
struct PointIdealSystem {
  std::vector<unsigned> orders;
  std::vector<TorusPoint> base_points;
};

/// Builds the system attached to evaluation points (base_points become
/// their m-map values); throws IndistinctClasses on a collision.
PointIdealSystem make_point_system(const std::vector<TorusPoint>& points,
                                   const std::vector<unsigned>& orders);

/// Same, from the m-values directly.
PointIdealSystem point_system_from_mvalues(std::vector<TorusPoint> mvalues,
                                           std::vector<unsigned> orders);

/// Membership in the radical of the zero-dimensional ideal: f vanishes at
/// every base point. Requires f in the zero component.
bool in_zero_dim_radical(const LaurentPoly& f, const PointIdealSystem& sys);

/// The Chinese-remainder image (f mod M_{b_1}, ..., f mod M_{b_r}), i.e.
/// the vector of values of f at the base points.
std::vector<Cyclo> crt_decompose(const LaurentPoly& f,
                                 const PointIdealSystem& sys);

/// Basis of the window slice of I_kbar, the class-k part of the kernel
/// ideal: all f = sum_j c_j t^{k + m.j} with |j_i| <= window that vanish at
/// every evaluation point. The j-indexed window makes the bases of any two
/// classes differ exactly by the monomial factor t^{k'-k}.
std::vector<LaurentPoly> window_ideal_basis(const PointIdealSystem& sys,
                                            const std::vector<long>& k,
                                            unsigned window);

}  // namespace mloop

#endif
