#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homprod/gf2.hpp"
#include "homprod/search.hpp"

namespace homprod {

enum class BoundStatus { exact, lower_bound };

struct Distance {
  std::optional<std::size_t> value;  // nullopt means infinite
  BoundStatus status = BoundStatus::exact;
  std::optional<std::size_t> upper_bound;  // from a witness when the value is only a lower bound
  std::optional<BinVector> witness;

  bool infinite() const { return !value.has_value(); }
  static Distance infinity() { return {}; }
  static Distance exact_value(std::size_t v, std::optional<BinVector> w = std::nullopt) {
    return {v, BoundStatus::exact, std::nullopt, std::move(w)};
  }
  static Distance at_least(std::size_t v) { return {v, BoundStatus::lower_bound, std::nullopt, {}}; }
};

// Smaller of two distances; infinity is the neutral element. The result is exact only if
// the smaller side is exact and the other side cannot be smaller.
Distance min_distance(const Distance& a, const Distance& b);

// Cochain complex C_lo -> ... -> C_hi with maps delta_j : C_j -> C_{j+1}. Level 0 holds
// the qubits when the complex is read as a code.
class ChainComplex {
 public:
  ChainComplex() = default;
  // maps[i] is delta_{lo + i}. Shapes are not checked here; see validate().
  ChainComplex(int lo, std::vector<BinMatrix> maps);
  static ChainComplex single_level(int level, std::size_t n);

  int min_level() const noexcept { return lo_; }
  int max_level() const noexcept { return lo_ + static_cast<int>(maps_.size()); }
  std::size_t length() const noexcept { return maps_.size(); }
  bool has_level(int j) const noexcept { return j >= min_level() && j <= max_level(); }

  // Dimension of C_j; zero outside the complex.
  std::size_t size(int j) const;
  // delta_j, or the zero map of the right shape when j is outside the stored range.
  BinMatrix map(int j) const;
  const std::vector<BinMatrix>& maps() const noexcept { return maps_; }

  // Rank of delta_j, cached.
  std::size_t map_rank(int j) const;

  // The dual complex D with D_m = C_{-m} and delta^D_m = (delta_{-m-1})^T.
  ChainComplex dual() const;

 private:
  int lo_ = 0;
  std::vector<BinMatrix> maps_;
  std::vector<std::size_t> sizes_;
  struct RankCache;
  std::shared_ptr<RankCache> ranks_;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

ValidationReport validate(const ChainComplex& c);

std::size_t betti(const ChainComplex& c, int j);
std::size_t cobetti(const ChainComplex& c, int j);

// Rows are cycles of ker delta_j that form a basis of homology at level j.
BinMatrix homology_representatives(const ChainComplex& c, int j);
// Rows are cocycles at level j pairing nondegenerately with homology at level j:
// a cycle z is a boundary iff reps * z == 0.
BinMatrix cohomology_representatives(const ChainComplex& c, int j);

// True when z is in ker delta_j but not in im delta_{j-1}.
bool is_nontrivial_cycle(const ChainComplex& c, int j, const BinVector& z);

// min |z| over nontrivial cycles at level j.
Distance homological_distance(const ChainComplex& c, int j, const SearchBudget& budget);
// min |z| over z in ker delta_j^T minus im delta_{j+1}^T (z lives in C_{j+1}).
Distance cohomological_distance(const ChainComplex& c, int j, const SearchBudget& budget);

// Length-1 complex C_0 -> C_1 with delta_0 = h.
ChainComplex classical_complex(const BinMatrix& h);

class NotMinimalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// As classical_complex, but h must have full row rank.
ChainComplex minimal_complex(const BinMatrix& h);

}  // namespace homprod
