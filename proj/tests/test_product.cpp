#include <doctest.h>

#include "homprod/product.hpp"
#include "oracle.hpp"

#include <map>

using namespace homprod;

namespace {

const BinMatrix rep2 = BinMatrix::from_rows({{1, 1}});
const BinMatrix rep3 = BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
const BinMatrix cyc3 = BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
const BinMatrix rep4 = BinMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});

// Betti numbers from the reference rank routine.
std::map<int, std::size_t> oracle_bettis(const ChainComplex& c) {
  std::map<int, std::size_t> out;
  for (int j = c.min_level(); j <= c.max_level(); ++j) {
    const std::size_t r_out = c.has_level(j + 1) ? oracle::rank(oracle::dense(c.map(j)), c.size(j)) : 0;
    const std::size_t r_in = c.has_level(j - 1) ? oracle::rank(oracle::dense(c.map(j - 1)), c.size(j - 1)) : 0;
    out[j] = c.size(j) - r_out - r_in;
  }
  return out;
}

// Stacks dense blocks placed at row/column offsets.
oracle::Dense assemble(std::size_t rows, std::size_t cols,
                       const std::vector<std::tuple<std::size_t, std::size_t, oracle::Dense>>& parts) {
  oracle::Dense out = oracle::zeros(rows, cols);
  for (const auto& [r0, c0, d] : parts)
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d[i].size(); ++j) out[r0 + i][c0 + j] ^= d[i][j];
  return out;
}

oracle::Dense eye(std::size_t n) {
  oracle::Dense d = oracle::zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

}  // namespace

TEST_CASE("single product matrices match the Kronecker layout") {
  for (const BinMatrix& h : {rep2, rep3, cyc3, rep4}) {
    const std::size_t m = h.rows(), n = h.cols();
    const auto d = oracle::dense(h);
    const auto dt = oracle::transpose(d, n);
    ChainComplex s = single_product(classical_complex(h));
    REQUIRE(s.min_level() == -1);
    // delta_-1 = [1_n (x) d^T ; d (x) 1_m], delta_0 = [d (x) 1_n , 1_m (x) d^T]
    auto dm1 = assemble(n * n + m * m, n * m,
                        {{0, 0, oracle::kron(eye(n), n, dt, m)}, {n * n, 0, oracle::kron(d, n, eye(m), m)}});
    auto d0 = assemble(m * n, n * n + m * m,
                       {{0, 0, oracle::kron(d, n, eye(n), n)}, {0, n * n, oracle::kron(eye(m), m, dt, m)}});
    CHECK(oracle::dense(s.map(-1)) == dm1);
    CHECK(oracle::dense(s.map(0)) == d0);
    CHECK(validate(s).ok);
  }
}

TEST_CASE("single product sizes") {
  ChainComplex s = single_product(minimal_complex(rep3));
  CHECK(s.size(-1) == 6);
  CHECK(s.size(0) == 13);
  CHECK(s.size(1) == 6);
  CHECK(betti(s, 0) == 1);
  ChainComplex p = single_product(minimal_complex(rep2));
  CHECK(p.size(0) == 5);
  CHECK(betti(p, 0) == 1);
  CHECK_THROWS_AS(single_product(s), std::invalid_argument);
}

TEST_CASE("double product sizes and Betti numbers") {
  ChainComplex d = double_product(single_product(minimal_complex(rep3)));
  CHECK(d.min_level() == -2);
  CHECK(d.size(0) == 241);
  CHECK(d.size(1) == 156);
  CHECK(d.size(-1) == 156);
  CHECK(betti(d, 0) == 1);
  CHECK(validate(d).ok);
  ChainComplex c = double_product(single_product(classical_complex(cyc3)));
  CHECK(c.size(0) == 486);
  CHECK(c.size(1) == 324);
  CHECK(betti(c, 0) == 6);
  ChainComplex r2 = double_product(single_product(minimal_complex(rep2)));
  CHECK(r2.size(0) == 33);
  CHECK(r2.size(1) == 20);
  CHECK(betti(r2, 0) == 1);
}

TEST_CASE("Kunneth formula and duality on random small codes") {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 12) {
    const std::size_t n = 2 + rng() % 4, m = 1 + rng() % 3;
    BinMatrix h = oracle::random_matrix(m, n, rng);
    if (h.is_zero()) continue;
    ++tested;
    ChainComplex c = classical_complex(h);
    ChainComplex s = single_product(c);
    ChainComplex d = double_product(s);
    for (const ChainComplex* pair : {&s, &d}) {
      const ChainComplex& base = pair == &s ? c : s;
      auto kb = oracle_bettis(base);
      auto kp = oracle_bettis(*pair);
      for (int lvl = pair->min_level(); lvl <= pair->max_level(); ++lvl) {
        std::size_t want = 0;
        for (int i = base.min_level(); i <= base.max_level(); ++i) {
          const int j = i - lvl;
          if (base.has_level(j)) want += kb[i] * kb[j];
        }
        CHECK(kp[lvl] == want);
        CHECK(betti(*pair, lvl) == want);
        CHECK(cobetti(*pair, lvl) == want);
      }
    }
  }
}

TEST_CASE("predicted parameters agree with the built complexes") {
  SearchBudget budget;
  ProductPrediction p = predict_params(minimal_complex(rep3), budget);
  ChainComplex s = single_product(minimal_complex(rep3));
  for (auto [lvl, size] : p.level_sizes) CHECK(s.size(lvl) == size);
  for (auto [lvl, k] : p.level_bettis) CHECK(betti(s, lvl) == k);
  ProductPrediction q = predict_params(s, budget);
  CHECK(q.level_sizes.at(0) == 241);
  CHECK(q.level_bettis.at(0) == 1);
  REQUIRE(q.redundancy.has_value());
  CHECK(*q.redundancy == Rational(13, 10));
}

TEST_CASE("redundancy") {
  CHECK(redundancy(single_product(minimal_complex(rep3))) == Rational(1));
  CHECK(redundancy(double_product(single_product(minimal_complex(rep3)))) == Rational(312, 240));
  CHECK(redundancy(double_product(single_product(minimal_complex(rep4)))) == Rational(1200, 912));
  const BinMatrix h6 = BinMatrix::from_rows(
      {{1, 1, 0, 0, 0, 0}, {0, 1, 1, 0, 1, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, 1}});
  ChainComplex d6 = double_product(single_product(minimal_complex(h6)));
  CHECK(d6.size(0) == 3856);
  CHECK(betti(d6, 0) == 16);
  CHECK(redundancy(d6) == Rational(4992, 3840));
}

TEST_CASE("build tower enforces minimality only when asked") {
  CHECK_THROWS_AS(build_tower(cyc3, 2, true), NotMinimalError);
  ProductTower t = build_tower(cyc3, 2, false);
  REQUIRE(t.dbl.has_value());
  CHECK(t.dbl->size(0) == 486);
}
