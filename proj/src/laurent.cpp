#include "mloop/laurent.hpp"

#include <sstream>

#include "mloop/errors.hpp"
#include "mloop/linalg.hpp"

namespace mloop {

LaurentPoly LaurentPoly::constant(std::size_t vars, const Cyclo& c) {
  return monomial(std::vector<long>(vars, 0), c);
}

LaurentPoly LaurentPoly::monomial(std::vector<long> exp, const Cyclo& c) {
  LaurentPoly f(exp.size());
  f.add_term(std::move(exp), c);
  return f;
}

void LaurentPoly::add_term(std::vector<long> exp, const Cyclo& c) {
  if (exp.size() != vars_) throw DimensionMismatch("exponent vector length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(std::move(exp), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.vars_ != vars_) throw DimensionMismatch("variable counts differ");
  for (const auto& [exp, c] : o.terms_) add_term(exp, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.vars_ != vars_) throw DimensionMismatch("variable counts differ");
  for (const auto& [exp, c] : o.terms_) add_term(exp, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (o.vars_ != vars_) throw DimensionMismatch("variable counts differ");
  LaurentPoly out(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<long> e(vars_);
      for (std::size_t i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(std::move(e), c1 * c2);
    }
  *this = std::move(out);
  return *this;
}

LaurentPoly LaurentPoly::scaled(const Cyclo& c) const {
  LaurentPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [exp, coeff] : terms_) out.add_term(exp, coeff * c);
  return out;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [exp, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ") t^(";
    for (std::size_t i = 0; i < exp.size(); ++i) {
      if (i) os << ",";
      os << exp[i];
    }
    os << ")";
  }
  return os.str();
}

Cyclo evaluate(const LaurentPoly& f, const TorusPoint& p) {
  if (p.coords.size() != f.vars())
    throw DimensionMismatch("point dimension differs from variable count");
  Cyclo out(0);
  for (const auto& [exp, c] : f.terms()) {
    Cyclo term = c;
    for (std::size_t i = 0; i < exp.size(); ++i)
      if (exp[i] != 0) term *= p.coords[i].pow(exp[i]);
    out += term;
  }
  return out;
}

TorusPoint m_map(const TorusPoint& p, const std::vector<unsigned>& orders) {
  if (p.coords.size() != orders.size())
    throw DimensionMismatch("point dimension differs from order count");
  TorusPoint out;
  out.coords.reserve(p.coords.size());
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    out.coords.push_back(p.coords[i].pow(static_cast<long>(orders[i])));
  return out;
}

LaurentPoly graded_component(const LaurentPoly& f,
                             const std::vector<unsigned>& kbar,
                             const std::vector<unsigned>& orders) {
  if (kbar.size() != orders.size() || f.vars() != orders.size())
    throw DimensionMismatch("class/orders/variable counts differ");
  LaurentPoly out(f.vars());
  for (const auto& [exp, c] : f.terms()) {
    bool matches = true;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      long m = static_cast<long>(orders[i]);
      if (((exp[i] % m) + m) % m != static_cast<long>(kbar[i]))
        matches = false;
    }
    if (matches) out.add_term(exp, c);
  }
  return out;
}

std::vector<LaurentPoly> interpolate_idempotents(
    const std::vector<TorusPoint>& points,
    const std::vector<unsigned>& orders) {
  const std::size_t n = orders.size(), r = points.size();
  std::vector<TorusPoint> mvals;
  mvals.reserve(r);
  for (const auto& p : points) mvals.push_back(m_map(p, orders));
  std::vector<LaurentPoly> out;
  out.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    LaurentPoly f = LaurentPoly::constant(n, Cyclo(1));
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i) continue;
      std::size_t c = n;
      for (std::size_t t = 0; t < n; ++t)
        if (!(mvals[i].coords[t] == mvals[j].coords[t])) {
          c = t;
          break;
        }
      if (c == n)
        throw IndistinctClasses("points share the same m-map value");
      // the linear Lagrange factor (u_c - b_jc) / (b_ic - b_jc) in u_c
      std::vector<long> exp(n, 0);
      exp[c] = static_cast<long>(orders[c]);
      LaurentPoly factor = LaurentPoly::monomial(exp, Cyclo(1));
      factor += LaurentPoly::constant(n, -mvals[j].coords[c]);
      Cyclo denom = mvals[i].coords[c] - mvals[j].coords[c];
      f *= factor.scaled(denom.inverse());
    }
    out.push_back(std::move(f));
  }
  return out;
}

PointIdealSystem make_point_system(const std::vector<TorusPoint>& points,
                                   const std::vector<unsigned>& orders) {
  std::vector<TorusPoint> mvals;
  mvals.reserve(points.size());
  for (const auto& p : points) mvals.push_back(m_map(p, orders));
  return point_system_from_mvalues(std::move(mvals), orders);
}

PointIdealSystem point_system_from_mvalues(std::vector<TorusPoint> mvalues,
                                           std::vector<unsigned> orders) {
  for (const auto& p : mvalues)
    if (p.coords.size() != orders.size())
      throw DimensionMismatch("m-value dimension differs from order count");
  for (std::size_t i = 0; i < mvalues.size(); ++i)
    for (std::size_t j = i + 1; j < mvalues.size(); ++j)
      if (mvalues[i] == mvalues[j])
        throw IndistinctClasses("base points are not pairwise distinct");
  return PointIdealSystem{std::move(orders), std::move(mvalues)};
}

namespace {

/// Value at a base point of the zero-component polynomial f, evaluated
/// through the substitution u_i = t_i^{m_i}.
Cyclo divided_evaluate(const LaurentPoly& f, const TorusPoint& mval,
                       const std::vector<unsigned>& orders) {
  Cyclo out(0);
  for (const auto& [exp, c] : f.terms()) {
    Cyclo term = c;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      long m = static_cast<long>(orders[i]);
      if (exp[i] % m != 0)
        throw NotInZeroComponent("term outside the zero graded component");
      if (exp[i] != 0) term *= mval.coords[i].pow(exp[i] / m);
    }
    out += term;
  }
  return out;
}

}  // namespace

bool in_zero_dim_radical(const LaurentPoly& f, const PointIdealSystem& sys) {
  if (f.vars() != sys.orders.size())
    throw DimensionMismatch("variable count differs from order count");
  for (const auto& b : sys.base_points)
    if (!divided_evaluate(f, b, sys.orders).is_zero()) return false;
  return true;
}

std::vector<Cyclo> crt_decompose(const LaurentPoly& f,
                                 const PointIdealSystem& sys) {
  if (f.vars() != sys.orders.size())
    throw DimensionMismatch("variable count differs from order count");
  std::vector<Cyclo> out;
  out.reserve(sys.base_points.size());
  for (const auto& b : sys.base_points)
    out.push_back(divided_evaluate(f, b, sys.orders));
  return out;
}

std::vector<LaurentPoly> window_ideal_basis(const PointIdealSystem& sys,
                                            const std::vector<long>& k,
                                            unsigned window) {
  const std::size_t n = sys.orders.size(), r = sys.base_points.size();
  if (k.size() != n) throw DimensionMismatch("class representative length");
  // columns: all offsets j with |j_i| <= window, in lexicographic order
  const long w = static_cast<long>(window);
  std::vector<std::vector<long>> offsets;
  std::vector<long> j(n, -w);
  bool done = false;
  while (!done) {
    offsets.push_back(j);
    done = true;
    for (std::size_t pos = n; pos-- > 0;) {
      if (++j[pos] <= w) {
        done = false;
        break;
      }
      j[pos] = -w;
    }
  }
  MatC rows(r, offsets.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t col = 0; col < offsets.size(); ++col) {
      Cyclo v(1);
      for (std::size_t t = 0; t < n; ++t)
        if (offsets[col][t] != 0)
          v *= sys.base_points[i].coords[t].pow(offsets[col][t]);
      rows(i, col) = v;
    }
  std::vector<LaurentPoly> out;
  for (const VecC& x : nullspace(rows)) {
    LaurentPoly f(n);
    for (std::size_t col = 0; col < offsets.size(); ++col) {
      if (x[col].is_zero()) continue;
      std::vector<long> exp(n);
      for (std::size_t t = 0; t < n; ++t)
        exp[t] = k[t] + static_cast<long>(sys.orders[t]) * offsets[col][t];
      f.add_term(std::move(exp), x[col]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace mloop
