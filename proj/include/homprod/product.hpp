#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homprod/chain.hpp"
#include "homprod/rational.hpp"

namespace homprod {

// One summand A_i (x) B_j of a product level, with its offset inside the level.
struct ProductBlock {
  int i = 0;
  int j = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
};

// Summands of level m of A (x) B in increasing i.
std::vector<ProductBlock> product_level_blocks(const ChainComplex& a, const ChainComplex& b, int m);

// Product complex with levels P_m = sum over i - j = m of A_i (x) B_j and boundary
// x (x) y -> (delta^A_i x) (x) y + x (x) (delta^B_{j-1})^T y.
ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b);

// C (x) C of a length-1 complex: C_0(x)C_1 -> C_0(x)C_0 + C_1(x)C_1 -> C_1(x)C_0.
ChainComplex single_product(const ChainComplex& c);
// C~ (x) C~ of a length-2 complex on levels -1..1, giving a length-4 complex on -2..2.
ChainComplex double_product(const ChainComplex& c);

// (n_1 + n_-1) / (n_0 - k_0).
Rational redundancy(const ChainComplex& c);

enum class Relation { equal, at_least };

struct DistancePrediction {
  std::string quantity;  // e.g. "d_-1", "d_0^T"
  int level = 0;
  bool cohomological = false;
  Relation relation = Relation::equal;
  std::optional<std::size_t> value;  // nullopt means infinite
};

struct ProductPrediction {
  int stages = 1;  // 1: single product of a length-1 input, 2: double product of a length-2 input
  std::map<int, std::size_t> level_sizes;
  std::map<int, std::size_t> level_bettis;
  std::vector<DistancePrediction> distances;
  std::optional<Rational> redundancy;        // exact when the formula determines it
  std::optional<Rational> redundancy_bound;  // strict upper bound
};

// Length-1 input predicts its single product; length-2 input predicts its double product.
// Input distances are computed within the budget; lower-bound inputs weaken equalities to bounds.
ProductPrediction predict_params(const ChainComplex& c, const SearchBudget& budget);

// Closed forms for the double product of a minimal [n, k] code.
struct MinimalDoubleSizes {
  std::size_t n_qubits;
  std::size_t n_checks_each;  // n_{+1} = n_{-1}
};
MinimalDoubleSizes minimal_double_sizes(std::size_t n, std::size_t k);

// Classical code, its single product and (optionally) its double product.
struct ProductTower {
  ChainComplex classical;
  ChainComplex single;
  std::optional<ChainComplex> dbl;
};

ProductTower build_tower(const BinMatrix& h, int stages, bool require_minimal);

}  // namespace homprod
