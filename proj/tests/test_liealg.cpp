#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mloop/errors.hpp"
#include "mloop/liealg.hpp"

using namespace mloop;

namespace {

VecQ unit(std::size_t dim, std::size_t i) {
  VecQ v(dim, Rational(0));
  v[i] = 1;
  return v;
}

MatQ realize(const ChevalleyAlgebra& g, const VecQ& coords) {
  MatQ out(g.matrix_size(), g.matrix_size());
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (coords[i] != 0) out = out + g.basis_matrix(i).scaled(coords[i]);
  return out;
}

// deterministic small pseudo-random rationals for property tests
struct Lcg {
  unsigned long state = 12345;
  long next(long lo, long hi) {
    state = state * 6364136223846793005UL + 1442695040888963407UL;
    return lo + static_cast<long>((state >> 33) % (hi - lo + 1));
  }
};

}  // namespace

TEST_CASE("dimensions and matrix sizes of the classical series") {
  struct Row {
    Series s;
    std::size_t rank, dim, msize;
  };
  // dim formulas: A_n (n+1)^2-1, B_n n(2n+1), C_n n(2n+1), D_n n(2n-1)
  const Row rows[] = {
      {Series::A, 1, 3, 2},   {Series::A, 2, 8, 3},   {Series::A, 3, 15, 4},
      {Series::B, 2, 10, 5},  {Series::B, 3, 21, 7},  {Series::C, 2, 10, 4},
      {Series::C, 3, 21, 6},  {Series::D, 3, 15, 6},  {Series::D, 4, 28, 8},
  };
  for (const Row& row : rows) {
    CAPTURE(series_letter(row.s));
    CAPTURE(row.rank);
    ChevalleyAlgebra g(row.s, row.rank);
    CHECK(g.dim() == row.dim);
    CHECK(g.matrix_size() == row.msize);
    CHECK(g.rank() == row.rank);
    CHECK(g.roots().size() == row.dim - row.rank);
  }
}

TEST_CASE("rank bounds and series letters") {
  CHECK_THROWS_AS(ChevalleyAlgebra(Series::A, 0), RankOutOfRange);
  CHECK_THROWS_AS(ChevalleyAlgebra(Series::B, 1), RankOutOfRange);
  CHECK_THROWS_AS(ChevalleyAlgebra(Series::C, 1), RankOutOfRange);
  CHECK_THROWS_AS(ChevalleyAlgebra(Series::D, 2), RankOutOfRange);
  CHECK_THROWS_AS(series_from_letter('E'), UnsupportedSeries);
  for (char c : {'A', 'B', 'C', 'D'})
    CHECK(series_letter(series_from_letter(c)) == c);
}

TEST_CASE("Cartan matrices match the classical tables") {
  using Table = std::vector<std::vector<long>>;
  CHECK(ChevalleyAlgebra(Series::A, 2).cartan_matrix() ==
        Table{{2, -1}, {-1, 2}});
  CHECK(ChevalleyAlgebra(Series::A, 3).cartan_matrix() ==
        Table{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  // convention: entry [i][j] is alpha_i(h_j)
  CHECK(ChevalleyAlgebra(Series::B, 2).cartan_matrix() ==
        Table{{2, -2}, {-1, 2}});
  CHECK(ChevalleyAlgebra(Series::C, 2).cartan_matrix() ==
        Table{{2, -1}, {-2, 2}});
  CHECK(ChevalleyAlgebra(Series::B, 3).cartan_matrix() ==
        Table{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
  CHECK(ChevalleyAlgebra(Series::C, 3).cartan_matrix() ==
        Table{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
  CHECK(ChevalleyAlgebra(Series::D, 4).cartan_matrix() ==
        Table{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  // D_3 is A_3 with the branch node first
  CHECK(ChevalleyAlgebra(Series::D, 3).cartan_matrix() ==
        Table{{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}});
}

TEST_CASE("generator relations and root data") {
  for (auto [s, rank] : {std::pair{Series::A, std::size_t{2}},
                         {Series::B, 2}, {Series::C, 3}, {Series::D, 4}}) {
    CAPTURE(series_letter(s));
    ChevalleyAlgebra g(s, rank);
    const auto& cartan = g.cartan_matrix();
    const std::size_t d = g.dim();

    for (std::size_t i = 0; i < rank; ++i) {
      VecQ e = unit(d, g.e_index(i)), f = unit(d, g.f_index(i));
      VecQ h = unit(d, i);
      CHECK(g.bracket(e, f) == h);
      for (std::size_t j = 0; j < rank; ++j) {
        VecQ hj = unit(d, j);
        VecQ scaled_e = e, scaled_f = f;
        for (auto& c : scaled_e) c *= Rational(cartan[i][j]);
        for (auto& c : scaled_f) c *= Rational(-cartan[i][j]);
        CHECK(g.bracket(hj, e) == scaled_e);
        CHECK(g.bracket(hj, f) == scaled_f);
        if (i != j) CHECK(is_zero_vector(g.bracket(e, unit(d, g.f_index(j)))));
      }
    }

    // roots are closed under negation and aligned with basis indices
    std::map<std::vector<long>, std::size_t> seen;
    for (std::size_t k = 0; k < g.roots().size(); ++k) {
      const auto& beta = g.roots()[k];
      CHECK(g.root_space_index(beta) == rank + k);
      CHECK(!seen.count(beta));
      seen[beta] = k;
      std::vector<long> neg(beta.size());
      for (std::size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
      CHECK_NOTHROW(g.root_space_index(neg));
    }
    CHECK(std::is_sorted(g.roots().begin(), g.roots().end()));

    // every root vector is an ad(h_j) eigenvector with eigenvalue
    // sum_i beta_i * cartan[i][j]
    for (std::size_t k = 0; k < g.roots().size(); ++k) {
      VecQ x = unit(d, rank + k);
      for (std::size_t j = 0; j < rank; ++j) {
        Rational expect = 0;
        for (std::size_t i = 0; i < rank; ++i)
          expect += Rational(g.roots()[k][i] * cartan[i][j]);
        VecQ want = x;
        for (auto& c : want) c *= expect;
        CHECK(g.bracket(unit(d, j), x) == want);
      }
    }
  }
}

TEST_CASE("bracket agrees with the matrix commutator") {
  Lcg rng;
  for (auto [s, rank] : {std::pair{Series::A, std::size_t{3}},
                         {Series::B, 2}, {Series::C, 2}, {Series::D, 3}}) {
    CAPTURE(series_letter(s));
    ChevalleyAlgebra g(s, rank);
    const std::size_t d = g.dim();
    for (int trial = 0; trial < 10; ++trial) {
      VecQ x(d), y(d);
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = Rational(rng.next(-3, 3), 1 + rng.next(0, 2));
        y[i] = Rational(rng.next(-3, 3), 1 + rng.next(0, 2));
      }
      MatQ mx = realize(g, x), my = realize(g, y);
      MatQ comm = mx * my - my * mx;
      CHECK(g.coordinates(comm) == g.bracket(x, y));
      CHECK(g.coordinates(mx) == x);
    }
  }
}

TEST_CASE("antisymmetry and the Jacobi identity on basis triples") {
  for (auto [s, rank] : {std::pair{Series::A, std::size_t{2}},
                         {Series::B, 2}, {Series::D, 3}}) {
    CAPTURE(series_letter(s));
    ChevalleyAlgebra g(s, rank);
    const std::size_t d = g.dim();
    std::vector<VecQ> units;
    for (std::size_t i = 0; i < d; ++i) units.push_back(unit(d, i));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        VecQ bij = g.bracket(units[i], units[j]);
        VecQ bji = g.bracket(units[j], units[i]);
        for (std::size_t k = 0; k < d; ++k) CHECK(bij[k] == -bji[k]);
        for (std::size_t k = 0; k < d; ++k) {
          VecQ lhs = g.bracket(units[i], g.bracket(units[j], units[k]));
          VecQ mid = g.bracket(g.bracket(units[i], units[j]), units[k]);
          VecQ rhs = g.bracket(units[j], g.bracket(units[i], units[k]));
          bool ok = true;
          for (std::size_t t = 0; t < d; ++t)
            if (lhs[t] != mid[t] + rhs[t]) ok = false;
          CHECK(ok);
        }
      }
  }
}

TEST_CASE("triangular decomposition splits the root spaces by sign") {
  ChevalleyAlgebra g(Series::C, 3);
  auto t = g.triangular();
  CHECK(t.cartan == std::vector<std::size_t>{0, 1, 2});
  CHECK(t.n_plus.size() == 9);
  CHECK(t.n_minus.size() == 9);
  CHECK(t.positive_roots.size() == 9);
  for (std::size_t k = 0; k < t.n_plus.size(); ++k) {
    const auto& beta = g.roots()[t.n_plus[k] - g.rank()];
    CHECK(beta == t.positive_roots[k]);
    for (long c : beta) CHECK(c >= 0);
  }
  for (std::size_t idx : t.n_minus) {
    bool has_negative = false;
    for (long c : g.roots()[idx - g.rank()])
      if (c < 0) has_negative = true;
    CHECK(has_negative);
  }
  // highest roots in simple-root coordinates
  ChevalleyAlgebra b2(Series::B, 2);
  CHECK_NOTHROW(b2.root_space_index({1, 2}));
  CHECK_THROWS(b2.root_space_index({2, 1}));
  ChevalleyAlgebra c2(Series::C, 2);
  CHECK_NOTHROW(c2.root_space_index({2, 1}));
  CHECK_THROWS(c2.root_space_index({1, 2}));
}

TEST_CASE("dominance test and diagram automorphism validation") {
  ChevalleyAlgebra g(Series::A, 2);
  CHECK(g.is_dominant_integral(Weight{{Rational(1), Rational(0)}}));
  CHECK(g.is_dominant_integral(Weight{{Rational(0), Rational(0)}}));
  CHECK(!g.is_dominant_integral(Weight{{Rational(-1), Rational(2)}}));
  CHECK(!g.is_dominant_integral(Weight{{Rational(1, 2), Rational(1)}}));
  CHECK_THROWS_AS(g.is_dominant_integral(Weight{{Rational(1)}}), RankMismatch);

  auto flip = g.diagram_automorphism({1, 0});
  CHECK(!flip.is_identity());
  CHECK(compose(flip, flip).is_identity());
  CHECK(inverse(flip) == flip);
  Weight w{{Rational(2), Rational(0)}};
  CHECK(g.weight_precompose_diagram(w, flip) ==
        Weight{{Rational(0), Rational(2)}});
  CHECK(g.weight_precompose_diagram(w, g.diagram_automorphism({0, 1})) == w);

  CHECK_THROWS(g.diagram_automorphism({0, 0}));
  CHECK_THROWS_AS(g.diagram_automorphism({0}), RankMismatch);
  // B2 has an asymmetric Cartan matrix, so the flip is not a diagram symmetry
  ChevalleyAlgebra b2(Series::B, 2);
  CHECK_THROWS(b2.diagram_automorphism({1, 0}));

  ChevalleyAlgebra a3(Series::A, 3);
  CHECK_NOTHROW(a3.diagram_automorphism({2, 1, 0}));
  ChevalleyAlgebra d4(Series::D, 4);
  CHECK_NOTHROW(d4.diagram_automorphism({0, 1, 3, 2}));
  CHECK_NOTHROW(d4.diagram_automorphism({2, 1, 3, 0}));
  CHECK_THROWS(d4.diagram_automorphism({1, 0, 2, 3}));
}

TEST_CASE("walking weights into the dominant chamber") {
  ChevalleyAlgebra g(Series::A, 2);
  auto [word, dom] = g.reflect_to_dominant({Rational(-1), Rational(2)});
  CHECK(word == std::vector<std::size_t>{0});
  CHECK(dom == std::vector<Rational>{Rational(1), Rational(1)});

  auto [word0, dom0] = g.reflect_to_dominant({Rational(1), Rational(1)});
  CHECK(word0.empty());
  CHECK(dom0 == std::vector<Rational>{Rational(1), Rational(1)});

  Lcg rng;
  for (auto [s, rank] : {std::pair{Series::A, std::size_t{3}},
                         {Series::B, 2}, {Series::C, 3}, {Series::D, 4}}) {
    CAPTURE(series_letter(s));
    ChevalleyAlgebra a(s, rank);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Rational> v(rank);
      for (auto& c : v) c = Rational(rng.next(-4, 4));
      auto [w, d] = a.reflect_to_dominant(v);
      for (const Rational& c : d) CHECK(c >= 0);
      // replaying the word on the input reproduces the dominant vector
      std::vector<Rational> replay = v;
      for (std::size_t i : w) replay = a.reflect(std::move(replay), i);
      CHECK(replay == d);
      // the dominant representative is an orbit invariant: scrambling v
      // by random simple reflections does not change it
      std::vector<Rational> scrambled = v;
      for (int k = 0; k < 6; ++k)
        scrambled = a.reflect(std::move(scrambled),
                              static_cast<std::size_t>(rng.next(0, rank - 1)));
      CHECK(a.reflect_to_dominant(scrambled).second == d);
    }
  }
}

TEST_CASE("basis layout of the smallest algebra") {
  ChevalleyAlgebra g(Series::A, 1);
  REQUIRE(g.dim() == 3);
  CHECK(g.f_index(0) == 1);  // root -alpha sorts before +alpha
  CHECK(g.e_index(0) == 2);
  CHECK(g.basis_matrix(0)(0, 0) == 1);
  CHECK(g.basis_matrix(0)(1, 1) == -1);
  CHECK(g.basis_matrix(2)(0, 1) == 1);  // e = E_12
  CHECK(g.basis_matrix(1)(1, 0) == 1);  // f = E_21
}
