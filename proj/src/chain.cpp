#include "homprod/chain.hpp"

#include <mutex>
#include <stdexcept>

namespace homprod {

struct ChainComplex::RankCache {
  std::mutex mutex;
  std::vector<std::optional<std::size_t>> values;
};

Distance min_distance(const Distance& a, const Distance& b) {
  if (a.infinite()) return b;
  if (b.infinite()) return a;
  const Distance& lo = *a.value <= *b.value ? a : b;
  const Distance& hi = *a.value <= *b.value ? b : a;
  Distance out = lo;
  // A lower bound on the smaller side stays a lower bound; an exact smaller side is exact.
  if (lo.status == BoundStatus::exact) return out;
  std::optional<std::size_t> ub = lo.upper_bound;
  if (hi.status == BoundStatus::exact) ub = ub ? std::min(*ub, *hi.value) : *hi.value;
  else if (hi.upper_bound) ub = ub ? std::min(*ub, *hi.upper_bound) : *hi.upper_bound;
  out.upper_bound = ub;
  if (ub && *ub == *out.value) {
    out.status = BoundStatus::exact;
    out.upper_bound.reset();
  }
  return out;
}

ChainComplex::ChainComplex(int lo, std::vector<BinMatrix> maps)
    : lo_(lo), maps_(std::move(maps)), ranks_(std::make_shared<RankCache>()) {
  if (maps_.empty()) throw std::invalid_argument("use single_level for a complex without maps");
  for (const auto& m : maps_) sizes_.push_back(m.cols());
  sizes_.push_back(maps_.back().rows());
  ranks_->values.resize(maps_.size());
}

ChainComplex ChainComplex::single_level(int level, std::size_t n) {
  ChainComplex c;
  c.lo_ = level;
  c.sizes_ = {n};
  c.ranks_ = std::make_shared<RankCache>();
  return c;
}

std::size_t ChainComplex::size(int j) const {
  if (!has_level(j)) return 0;
  return sizes_[static_cast<std::size_t>(j - lo_)];
}

BinMatrix ChainComplex::map(int j) const {
  if (j >= lo_ && j < max_level()) return maps_[static_cast<std::size_t>(j - lo_)];
  return BinMatrix(size(j + 1), size(j));
}

std::size_t ChainComplex::map_rank(int j) const {
  if (!(j >= lo_ && j < max_level())) return 0;
  const auto i = static_cast<std::size_t>(j - lo_);
  {
    std::lock_guard<std::mutex> lock(ranks_->mutex);
    if (ranks_->values[i]) return *ranks_->values[i];
  }
  std::size_t r = rank(maps_[i]);
  std::lock_guard<std::mutex> lock(ranks_->mutex);
  ranks_->values[i] = r;
  return r;
}

ChainComplex ChainComplex::dual() const {
  if (maps_.empty()) return single_level(-lo_, sizes_.front());
  std::vector<BinMatrix> dm;
  // D levels run from -max to -lo; delta^D_m = (delta_{-m-1})^T
  for (int m = -max_level(); m < -lo_; ++m) dm.push_back(map(-m - 1).transpose());
  ChainComplex d(-max_level(), std::move(dm));
  std::lock_guard<std::mutex> lock(ranks_->mutex);
  const std::size_t n = maps_.size();
  for (std::size_t i = 0; i < n; ++i) d.ranks_->values[i] = ranks_->values[n - 1 - i];
  return d;
}

ValidationReport validate(const ChainComplex& c) {
  ValidationReport rep;
  const auto& maps = c.maps();
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    const int j = c.min_level() + static_cast<int>(i);
    if (maps[i].rows() != maps[i + 1].cols()) {
      rep.ok = false;
      rep.violations.push_back("dimension mismatch: delta_" + std::to_string(j) + " has " +
                               std::to_string(maps[i].rows()) + " rows but delta_" +
                               std::to_string(j + 1) + " has " + std::to_string(maps[i + 1].cols()) +
                               " columns");
      continue;
    }
    if (!(maps[i + 1] * maps[i]).is_zero()) {
      rep.ok = false;
      rep.violations.push_back("delta_" + std::to_string(j + 1) + " * delta_" + std::to_string(j) +
                               " is nonzero");
    }
  }
  return rep;
}

namespace {

void require_level(const ChainComplex& c, int j) {
  if (!c.has_level(j))
    throw std::invalid_argument("level " + std::to_string(j) + " is outside the complex");
}

// Rows of `candidates` that are independent modulo the row space of `base`, in order.
BinMatrix independent_modulo(const BinMatrix& base, const BinMatrix& candidates) {
  const std::size_t n = candidates.cols();
  std::vector<BinVector> basis;             // reduced rows
  std::vector<std::size_t> lead;            // leading bit of each basis row
  auto reduce = [&](BinVector v) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (v.get(lead[i])) v += basis[i];
    return v;
  };
  auto insert = [&](const BinVector& v) {
    BinVector r = reduce(v);
    auto s = r.support();
    if (s.empty()) return false;
    std::size_t p = s.front();
    for (auto& b : basis)
      if (b.get(p)) b += r;
    basis.push_back(r);
    lead.push_back(p);
    return true;
  };
  for (std::size_t i = 0; i < base.rows(); ++i) insert(base.row(i));
  std::vector<BinVector> picked;
  for (std::size_t i = 0; i < candidates.rows(); ++i)
    if (insert(candidates.row(i))) picked.push_back(candidates.row(i));
  return BinMatrix::from_row_vectors(std::move(picked), n);
}

}  // namespace

std::size_t betti(const ChainComplex& c, int j) {
  require_level(c, j);
  return c.size(j) - c.map_rank(j) - c.map_rank(j - 1);
}

std::size_t cobetti(const ChainComplex& c, int j) {
  require_level(c, j);
  // nullity(delta_{j-1}^T) - rank(delta_j^T)
  return c.size(j) - c.map_rank(j - 1) - c.map_rank(j);
}

BinMatrix homology_representatives(const ChainComplex& c, int j) {
  require_level(c, j);
  BinMatrix cycles = kernel_matrix(c.map(j));
  BinMatrix boundaries = c.map(j - 1).transpose();  // rows span im delta_{j-1}
  return independent_modulo(boundaries, cycles);
}

BinMatrix cohomology_representatives(const ChainComplex& c, int j) {
  require_level(c, j);
  BinMatrix cocycles = image_annihilator(c.map(j - 1));
  return independent_modulo(c.map(j), cocycles);
}

bool is_nontrivial_cycle(const ChainComplex& c, int j, const BinVector& z) {
  require_level(c, j);
  if (!(c.map(j) * z).is_zero()) return false;
  return !(cohomology_representatives(c, j) * z).is_zero();
}

Distance homological_distance(const ChainComplex& c, int j, const SearchBudget& budget) {
  require_level(c, j);
  if (betti(c, j) == 0) return Distance::infinity();
  BinMatrix reps = cohomology_representatives(c, j);
  SubsetSearch search(c.map(j), reps);
  SearchOutcome o = search.find_min(BinVector(c.size(j + 1)), budget,
                                    [](std::span<const std::uint64_t> tag) {
                                      for (auto w : tag)
                                        if (w) return true;
                                      return false;
                                    });
  switch (o.status) {
    case SearchStatus::found:
      return Distance::exact_value(o.support.size(), BinVector::from_support(c.size(j), o.support));
    case SearchStatus::none_within_weight:
      return Distance::at_least(budget.max_weight + 1);
    default:
      return Distance::at_least(o.covered_weight + 1);
  }
}

Distance cohomological_distance(const ChainComplex& c, int j, const SearchBudget& budget) {
  if (!c.has_level(j) || !c.has_level(j + 1))
    throw std::invalid_argument("cohomological distance needs levels j and j+1");
  return homological_distance(c.dual(), -j - 1, budget);
}

ChainComplex classical_complex(const BinMatrix& h) { return ChainComplex(0, {h}); }

ChainComplex minimal_complex(const BinMatrix& h) {
  if (rank(h) != h.rows())
    throw NotMinimalError("check matrix does not have full row rank (rank " +
                          std::to_string(rank(h)) + " < " + std::to_string(h.rows()) + " rows)");
  return classical_complex(h);
}

}  // namespace homprod
