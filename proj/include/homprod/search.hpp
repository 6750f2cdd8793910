#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "homprod/gf2.hpp"

namespace homprod {

struct SearchBudget {
  std::size_t max_weight = 6;
  // Leaf visits plus table probes allowed across all weights. A weight is only
  // started if it can be finished, so coverage is always a whole number of weights.
  double max_evaluations = 2e8;
};

enum class SearchStatus { found, none_within_weight, cost_limited, infeasible };

struct SearchOutcome {
  SearchStatus status = SearchStatus::none_within_weight;
  std::vector<std::size_t> support;  // sorted, valid when found
  std::size_t covered_weight = 0;    // all subsets of this weight or less were examined
};

// Weight-ordered search over subsets of the columns of a matrix. Each column has a
// key part, which must sum to a target, and an optional tag part passed to a filter.
// Subsets are produced by increasing weight and, within a weight, in lexicographic
// order of their sorted supports. Weights of three or more use a meet-in-the-middle
// table of column pairs when the table is small enough.
class SubsetSearch {
 public:
  using TagFilter = std::function<bool(std::span<const std::uint64_t>)>;
  using Visitor = std::function<bool(std::span<const std::size_t>)>;

  explicit SubsetSearch(const BinMatrix& key);
  SubsetSearch(const BinMatrix& key, const BinMatrix& tag);

  std::size_t columns() const noexcept { return n_; }

  SearchOutcome find_min(const BinVector& target, const SearchBudget& budget,
                         const TagFilter& accept = {}) const;

  // Calls visit on every accepted subset of weight <= budget.max_weight. visit returns
  // false to stop early. Returns the number of fully covered weights plus status.
  SearchOutcome for_each(const BinVector& target, const SearchBudget& budget, const Visitor& visit,
                         const TagFilter& accept = {}) const;

 private:
  struct PairEntry {
    std::uint64_t hash;
    std::uint32_t a;
    std::uint32_t b;
  };

  const std::uint64_t* key(std::size_t c) const { return keys_.data() + c * kw_; }
  const std::uint64_t* tag(std::size_t c) const { return tags_.data() + c * tw_; }
  std::uint64_t hash_key(const std::uint64_t* words) const;
  bool pair_table_allowed() const;
  const std::vector<PairEntry>& pair_table() const;

  // Returns false when the visitor asked to stop.
  bool run_weight(std::size_t w, const std::vector<std::uint64_t>& target, const Visitor& visit,
                  const TagFilter& accept) const;

  std::size_t n_ = 0;
  std::size_t kw_ = 0;
  std::size_t tw_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> tags_;
  mutable std::once_flag table_once_;
  mutable std::vector<PairEntry> table_;
};

// Minimum-weight x with m x = b, lexicographically first among ties. Reports
// infeasible when b is outside im(m).
struct MinWeightResult {
  SearchStatus status = SearchStatus::infeasible;
  BinVector x;
  std::size_t covered_weight = 0;
};
MinWeightResult min_weight_solution(const BinMatrix& m, const BinVector& b,
                                    const SearchBudget& budget);
MinWeightResult min_weight_solution(const SubsetSearch& search, const BinVector& b,
                                    const SearchBudget& budget);

// Minimum-weight element of the coset solve(m, b) + ker(m) with weight <= w_max, or nullopt
// when b is outside im(m) or every solution is heavier than w_max.
std::optional<BinVector> min_weight_in_coset(const BinMatrix& m, const BinVector& b, std::size_t w_max);

// Binomial coefficient as a double, saturating to a large value.
double choose(std::size_t n, std::size_t k);

}  // namespace homprod
