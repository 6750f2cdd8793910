#include <doctest.h>

#include "homprod/gf2.hpp"
#include "homprod/search.hpp"
#include "oracle.hpp"

using namespace homprod;

TEST_CASE("rank of small matrices") {
  CHECK(rank(BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}})) == 2);
  CHECK(rank(BinMatrix(3, 4)) == 0);
  CHECK(rank(BinMatrix::identity(5)) == 5);
}

TEST_CASE("kernel basis examples") {
  auto k = kernel_basis(BinMatrix::from_rows({{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == BinVector::from_bits({1, 1}));
  CHECK(kernel_basis(BinMatrix::identity(4)).empty());
  auto rep = kernel_basis(BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
  REQUIRE(rep.size() == 1);
  CHECK(rep[0] == BinVector::from_bits({1, 1, 1}));
}

TEST_CASE("solve examples") {
  BinVector b = BinVector::from_bits({1, 0, 1, 1});
  CHECK(solve(BinMatrix::identity(4), b) == b);
  CHECK(solve(BinMatrix::from_rows({{1, 1}}), BinVector::from_bits({1})) == BinVector::from_bits({1, 0}));
  CHECK_FALSE(solve(BinMatrix(2, 3), BinVector::from_bits({1, 0})).has_value());
}

TEST_CASE("min weight in coset examples") {
  const BinMatrix m = BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
  CHECK(min_weight_in_coset(m, BinVector(2), 3) == BinVector(3));
  CHECK(min_weight_in_coset(m, BinVector::from_bits({1, 0}), 3) == BinVector::from_bits({1, 0, 0}));
  CHECK(min_weight_in_coset(m, BinVector::from_bits({1, 1}), 1) == BinVector::from_bits({0, 1, 0}));
  CHECK_FALSE(min_weight_in_coset(BinMatrix(1, 2), BinVector::from_bits({1}), 2).has_value());
}

TEST_CASE("column and row supports") {
  const BinMatrix x = BinMatrix::from_rows({{1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 1, 0}, {0, 0, 0, 1, 1, 0}});
  CHECK(colsupp(x) == std::vector<std::size_t>{0, 1, 3, 4});
  CHECK(rowsupp(x) == std::vector<std::size_t>{0, 1, 2});
  CHECK(colsupp(BinMatrix(2, 3)).empty());
  CHECK(rowsupp(BinMatrix(2, 3)).empty());
  CHECK(colsupp(BinMatrix::identity(3)) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("reshape and flatten") {
  CHECK(reshape(BinVector(6), 2, 3).is_zero());
  BinMatrix u = reshape(BinVector::unit(12, 1 * 4 + 2), 3, 4);
  CHECK(u.weight() == 1);
  CHECK(u.get(1, 2));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t ar = 1 + rng() % 4, ac = 1 + rng() % 4, br = 1 + rng() % 4, bc = 1 + rng() % 4;
    BinMatrix a = oracle::random_matrix(ar, ac, rng), b = oracle::random_matrix(br, bc, rng);
    BinVector v = oracle::random_vector(ac * bc, rng);
    BinVector lhs = flatten(a * reshape(v, ac, bc) * b.transpose());
    auto k = oracle::kron(oracle::dense(a), ac, oracle::dense(b), bc);
    CHECK(oracle::dense(lhs) == oracle::mul(k, oracle::dense(v)));
    CHECK(flatten(reshape(v, ac, bc)) == v);
  }
}

TEST_CASE("kron matches the reference") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    BinMatrix a = oracle::random_matrix(1 + rng() % 3, 1 + rng() % 4, rng);
    BinMatrix b = oracle::random_matrix(1 + rng() % 4, 1 + rng() % 3, rng);
    CHECK(oracle::dense(BinMatrix::kron(a, b)) == oracle::kron(oracle::dense(a), a.cols(), oracle::dense(b), b.cols()));
  }
}

TEST_CASE("random matrices: rank, kernel and solve against the reference") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 90;
    BinMatrix m = oracle::random_matrix(r, c, rng, trial % 3 == 0 ? 0.2 : 0.5);
    const std::size_t rk = oracle::rank(oracle::dense(m), c);
    CHECK(rank(m) == rk);
    auto kb = kernel_basis(m);
    CHECK(kb.size() == c - rk);
    for (const auto& v : kb) CHECK((m * v).is_zero());
    BinMatrix km = kernel_matrix(m);
    if (km.rows() > 0) CHECK(oracle::rank(oracle::dense(km), c) == c - rk);
    BinVector x0 = oracle::random_vector(c, rng);
    BinVector b = m * x0;
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m * *x == b);
    Gf2Solver s(m);
    CHECK(s.in_image(b));
    CHECK(m * *s.solve(b) == b);
    CHECK((image_annihilator(m) * b).is_zero());
  }
}

TEST_CASE("min weight solution matches brute force") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t r = 2 + rng() % 5, c = 3 + rng() % 10;
    BinMatrix m = oracle::random_matrix(r, c, rng, 0.4);
    BinVector b = trial % 4 == 0 ? oracle::random_vector(r, rng) : m * oracle::random_vector(c, rng, 0.3);
    auto want = oracle::min_preimage_weight(oracle::dense(m), c, oracle::dense(b));
    SearchBudget budget;
    budget.max_weight = c;
    MinWeightResult got = min_weight_solution(m, b, budget);
    if (!want) {
      CHECK(got.status == SearchStatus::infeasible);
      continue;
    }
    REQUIRE(got.status == SearchStatus::found);
    CHECK(got.x.weight() == *want);
    CHECK(m * got.x == b);
    auto capped = min_weight_in_coset(m, b, *want);
    REQUIRE(capped.has_value());
    CHECK(capped->weight() == *want);
    if (*want > 0) CHECK_FALSE(min_weight_in_coset(m, b, *want - 1).has_value());
  }
}

TEST_CASE("subset search visits weights in order, lexicographic within a weight") {
  BinMatrix m = BinMatrix::from_rows({{1, 1, 1, 1}});
  SubsetSearch search(m);
  SearchBudget budget;
  budget.max_weight = 4;
  std::vector<std::vector<std::size_t>> seen;
  search.for_each(BinVector(1), budget, [&](std::span<const std::size_t> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  std::vector<std::vector<std::size_t>> want = {{}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2, 3}};
  CHECK(seen == want);
}
