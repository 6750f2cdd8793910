#include "homprod/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace homprod {

namespace {

constexpr std::size_t kMaxPairEntries = 4'000'000;

std::vector<std::uint64_t> column_words(const BinMatrix& m, std::size_t& words_per_column) {
  BinMatrix t = m.transpose();
  words_per_column = (m.rows() + 63) / 64;
  std::vector<std::uint64_t> out(t.rows() * words_per_column, 0);
  for (std::size_t c = 0; c < t.rows(); ++c) {
    auto w = t.row(c).words();
    std::copy(w.begin(), w.end(), out.begin() + static_cast<std::ptrdiff_t>(c * words_per_column));
  }
  return out;
}

void xor_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

bool equal_words(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double choose(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (r > 1e30) return 1e30;
  }
  return std::round(r);
}

SubsetSearch::SubsetSearch(const BinMatrix& key) : n_(key.cols()) {
  keys_ = column_words(key, kw_);
  tw_ = 0;
}

SubsetSearch::SubsetSearch(const BinMatrix& key, const BinMatrix& tag) : n_(key.cols()) {
  if (tag.cols() != key.cols()) throw std::invalid_argument("key and tag column counts differ");
  keys_ = column_words(key, kw_);
  tags_ = column_words(tag, tw_);
}

std::uint64_t SubsetSearch::hash_key(const std::uint64_t* words) const {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (std::size_t i = 0; i < kw_; ++i) h = mix(h ^ words[i]);
  return h;
}

bool SubsetSearch::pair_table_allowed() const {
  return n_ >= 2 && choose(n_, 2) <= static_cast<double>(kMaxPairEntries) &&
         n_ < std::numeric_limits<std::uint32_t>::max();
}

const std::vector<SubsetSearch::PairEntry>& SubsetSearch::pair_table() const {
  std::call_once(table_once_, [this] {
    std::vector<std::uint64_t> acc(kw_);
    table_.reserve(n_ * (n_ - 1) / 2);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) {
        xor_into(acc.data(), key(a), key(b), kw_);
        table_.push_back({hash_key(acc.data()), static_cast<std::uint32_t>(a),
                          static_cast<std::uint32_t>(b)});
      }
    std::sort(table_.begin(), table_.end(), [](const PairEntry& x, const PairEntry& y) {
      if (x.hash != y.hash) return x.hash < y.hash;
      if (x.a != y.a) return x.a < y.a;
      return x.b < y.b;
    });
  });
  return table_;
}

bool SubsetSearch::run_weight(std::size_t w, const std::vector<std::uint64_t>& target,
                              const Visitor& visit, const TagFilter& accept) const {
  const bool use_table = w >= 2 && pair_table_allowed();
  const std::size_t left = use_table ? w - 2 : w;
  const std::vector<PairEntry>* table = use_table ? &pair_table() : nullptr;

  // accumulators for depth 0..left; depth 0 is the empty sum
  std::vector<std::uint64_t> kacc((left + 1) * kw_, 0);
  std::vector<std::uint64_t> tacc((left + 1) * tw_, 0);
  std::vector<std::uint64_t> need(kw_), tag_sum(tw_);
  std::vector<std::size_t> idx(w);
  bool keep_going = true;

  auto leaf = [&](std::size_t depth_acc) -> void {
    const std::uint64_t* ka = kacc.data() + depth_acc * kw_;
    const std::uint64_t* ta = tacc.data() + depth_acc * tw_;
    if (!use_table) {
      if (!equal_words(ka, target.data(), kw_)) return;
      if (accept && !accept({ta, tw_})) return;
      keep_going = visit({idx.data(), w});
      return;
    }
    xor_into(need.data(), ka, target.data(), kw_);
    const std::uint64_t h = hash_key(need.data());
    const std::uint32_t min_a = left == 0 ? 0 : static_cast<std::uint32_t>(idx[left - 1] + 1);
    auto it = std::lower_bound(table->begin(), table->end(), PairEntry{h, min_a, 0},
                               [](const PairEntry& x, const PairEntry& y) {
                                 if (x.hash != y.hash) return x.hash < y.hash;
                                 if (x.a != y.a) return x.a < y.a;
                                 return x.b < y.b;
                               });
    for (; it != table->end() && it->hash == h; ++it) {
      bool match = true;
      for (std::size_t i = 0; i < kw_ && match; ++i)
        match = (key(it->a)[i] ^ key(it->b)[i]) == need[i];
      if (!match) continue;
      if (accept) {
        for (std::size_t i = 0; i < tw_; ++i) tag_sum[i] = ta[i] ^ tag(it->a)[i] ^ tag(it->b)[i];
        if (!accept({tag_sum.data(), tw_})) continue;
      }
      idx[left] = it->a;
      idx[left + 1] = it->b;
      keep_going = visit({idx.data(), w});
      if (!keep_going) return;
    }
  };

  // Recursive enumeration of the left part in lexicographic order.
  auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (!keep_going) return;
    if (depth == left) {
      leaf(depth);
      return;
    }
    const std::size_t remaining = w - depth;  // left part plus any table pair
    for (std::size_t c = start; c + remaining <= n_ && keep_going; ++c) {
      idx[depth] = c;
      xor_into(kacc.data() + (depth + 1) * kw_, kacc.data() + depth * kw_, key(c), kw_);
      if (tw_) xor_into(tacc.data() + (depth + 1) * tw_, tacc.data() + depth * tw_, tag(c), tw_);
      self(self, depth + 1, c + 1);
    }
  };
  rec(rec, 0, 0);
  return keep_going;
}

SearchOutcome SubsetSearch::for_each(const BinVector& target, const SearchBudget& budget,
                                     const Visitor& visit, const TagFilter& accept) const {
  if (target.words().size() != kw_) throw std::invalid_argument("search target length mismatch");
  std::vector<std::uint64_t> tgt(target.words().begin(), target.words().end());
  SearchOutcome out;
  double spent = 0.0;
  const std::size_t top = std::min(budget.max_weight, n_);
  for (std::size_t w = 0; w <= top; ++w) {
    double cost = (w >= 2 && pair_table_allowed()) ? choose(n_, w - 2) : choose(n_, w);
    if (spent + cost > budget.max_evaluations) {
      out.status = SearchStatus::cost_limited;
      out.covered_weight = w == 0 ? 0 : w - 1;
      return out;
    }
    spent += cost;
    if (!run_weight(w, tgt, visit, accept)) {
      out.status = SearchStatus::found;
      out.covered_weight = w;
      return out;
    }
    out.covered_weight = w;
  }
  out.status = SearchStatus::none_within_weight;
  return out;
}

SearchOutcome SubsetSearch::find_min(const BinVector& target, const SearchBudget& budget,
                                     const TagFilter& accept) const {
  std::vector<std::size_t> best;
  SearchOutcome out = for_each(
      target, budget,
      [&](std::span<const std::size_t> s) {
        best.assign(s.begin(), s.end());
        return false;
      },
      accept);
  if (out.status == SearchStatus::found) {
    out.support = std::move(best);
    out.covered_weight = out.support.size();
  }
  return out;
}

}  // namespace homprod

namespace homprod {

MinWeightResult min_weight_solution(const SubsetSearch& search, const BinVector& b,
                                    const SearchBudget& budget) {
  MinWeightResult r;
  SearchOutcome o = search.find_min(b, budget);
  r.status = o.status;
  r.covered_weight = o.covered_weight;
  if (o.status == SearchStatus::found) r.x = BinVector::from_support(search.columns(), o.support);
  return r;
}

MinWeightResult min_weight_solution(const BinMatrix& m, const BinVector& b,
                                    const SearchBudget& budget) {
  if (!solve(m, b)) {
    MinWeightResult r;
    r.status = SearchStatus::infeasible;
    return r;
  }
  return min_weight_solution(SubsetSearch(m), b, budget);
}

std::optional<BinVector> min_weight_in_coset(const BinMatrix& m, const BinVector& b, std::size_t w_max) {
  SearchBudget budget;
  budget.max_weight = w_max;
  MinWeightResult r = min_weight_solution(m, b, budget);
  if (r.status != SearchStatus::found) return std::nullopt;
  return r.x;
}

}  // namespace homprod
