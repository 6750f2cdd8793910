#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "homprod/chain.hpp"
#include "homprod/gf2.hpp"
#include "homprod/rational.hpp"
#include "homprod/search.hpp"

namespace homprod {

enum class VerdictKind { certified, counterexample, budget_limited };

std::string to_string(VerdictKind v);

// A syndrome of weight x < t whose lightest preimage is heavier than f(x).
struct Counterexample {
  BinVector r;  // some preimage
  BinVector s;
  std::size_t x = 0;
  std::size_t min_preimage_at_least = 0;
};

struct Verdict {
  VerdictKind kind = VerdictKind::budget_limited;
  std::optional<Counterexample> counterexample;
  std::size_t syndromes_checked = 0;
  std::string detail;
};

struct ProfileEntry {
  std::size_t x = 0;
  std::size_t worst = 0;       // max over s of min |r| with delta r = s
  bool exact = true;           // false: some s only has the lower bound recorded in worst
  std::size_t syndromes = 0;   // syndromes of weight x in the image
  BinVector worst_syndrome;
};

struct SoundnessProfile {
  std::vector<ProfileEntry> map;  // index x, x = 0..x_max
  std::optional<std::size_t> t_claimed;  // nullopt: infinite
  PowerLaw f_claimed = PowerLaw::quadratic();
  Verdict verdict;
  std::string method;  // "full", "r-first" or "image-first"
};

// Worst-case minimum preimage weight per syndrome weight. Domains of dimension <= 20 are
// enumerated in full; larger ones are profiled image-first over all s with |s| <= x_max,
// with preimages searched up to w_domain_max.
SoundnessProfile soundness_profile(const BinMatrix& delta, std::size_t w_domain_max, std::size_t x_max,
                                   std::optional<std::size_t> t_claimed = std::nullopt,
                                   PowerLaw f_claimed = PowerLaw::quadratic(),
                                   const SearchBudget& budget = {});

// Profile from every r with |r| <= w_domain_max. Entries only cover syndromes reached.
SoundnessProfile soundness_profile_r_first(const BinMatrix& delta, std::size_t w_domain_max, std::size_t x_max);

// Profile over every s in the image with |s| <= x_max.
SoundnessProfile soundness_profile_image_first(const BinMatrix& delta, std::size_t w_domain_max,
                                               std::size_t x_max, const SearchBudget& budget = {});

// (t, f)-soundness of s = delta r: every s in the image with |s| < t has a preimage of
// weight <= f(|s|).
Verdict certify(const BinMatrix& delta, std::optional<std::size_t> t, PowerLaw f, const SearchBudget& budget = {});

// Same for a stabiliser check set in symplectic form (2n columns, X half then Z half),
// with Pauli weight and s = symplectic syndrome. Exhaustive over all 4^n Paulis, n <= 10.
Verdict certify_checks(const BinMatrix& symplectic_checks, std::optional<std::size_t> t, PowerLaw f);

// Maps of a single product C (x) C that have a length-2 constructive preimage.
enum class Len2Map {
  zero_transpose,  // C1(x)C0 -> C0(x)C0 + C1(x)C1
  minus_one,       // C0(x)C1 -> C0(x)C0 + C1(x)C1
};

struct Len2Result {
  BinVector r;
  bool bound_guaranteed = true;  // |s| < t
  std::size_t transforms = 0;    // R -> R + a b^T steps
  std::size_t col_support = 0;
  std::size_t row_support = 0;
};

// Constructive low-weight preimages for one map of the single product of delta0.
class Len2Solver {
 public:
  Len2Solver(const BinMatrix& delta0, Len2Map which);

  const BinMatrix& map() const { return map_; }
  Len2Map which() const { return which_; }

  // Any solution, reshaped, then reduced by intersecting kernel column/row pairs until none
  // remain. Throws std::invalid_argument when s is outside the image.
  Len2Result solve(const BinVector& s, std::optional<std::size_t> t) const;

  // Reduction step alone on a reshaped candidate; returns the number of transforms.
  std::size_t reduce(BinMatrix& r) const;

  std::size_t r_rows() const { return r_rows_; }
  std::size_t r_cols() const { return r_cols_; }

 private:
  Len2Map which_;
  BinMatrix map_;
  Gf2Solver solver_;
  BinMatrix col_kernel_map_;  // columns a of R with col_kernel_map_ a = 0 may be used
  BinMatrix row_kernel_map_;  // rows b of R with row_kernel_map_ b = 0 may be used
  std::size_t r_rows_ = 0, r_cols_ = 0;
};

Len2Result len2_preimage(const BinMatrix& delta0, Len2Map which, const BinVector& s, std::optional<std::size_t> t);

// R_b with S_L = d_m1 R_a + R_b d_m1, S_R = d_0 R_b + R_c d_0 and M = d_0 R_b d_m1, where
// d_0, d_m1 are the two maps of the single product.
struct PartialDecodeState {
  BinMatrix R_b, S_L, S_R, M;
  std::array<std::size_t, 6> loop_counters{};
  std::size_t passes = 0;
  bool converged = false;
};

// Checks M = d_0 S_L = S_R d_m1 = d_0 R_b d_m1; throws std::invalid_argument naming the failing identity.
PartialDecodeState make_partial_state(BinMatrix R_b, BinMatrix S_L, BinMatrix S_R, const BinMatrix& d0,
                                      const BinMatrix& dm1);

// Runs the six while loops, smallest admissible index first, and repeats the sequence until a
// pass makes no change. M is re-checked after every transform (std::logic_error on failure).
void partial_decode_Rb(PartialDecodeState& state, const BinMatrix& d0, const BinMatrix& dm1,
                       std::size_t max_passes = 64);

// The six terminal support conditions, in loop order.
std::array<bool, 6> terminal_conditions(const PartialDecodeState& state, const BinMatrix& d0, const BinMatrix& dm1);

// Remainder S_L - R_b d_m1 as columns alpha_j at column index j (side L), or S_R - d_0 R_b as
// rows beta_i at row index i (side R).
struct RemainderTerm {
  BinVector vec;
  std::size_t index = 0;
};

struct RemainderDecomposition {
  enum class Side { L, R } side = Side::L;
  std::vector<RemainderTerm> terms;
};

RemainderDecomposition left_remainder(const PartialDecodeState& state, const BinMatrix& dm1);
RemainderDecomposition right_remainder(const PartialDecodeState& state, const BinMatrix& d0);

struct PartialDecodeCheck {
  bool correctness = false;      // d_0 R_b d_m1 = M
  bool low_weight = false;       // |R_b| <= |S_L| |S_R|
  bool left_remainder = false;   // count, size, kernel and support containment in S_L
  bool right_remainder = false;  // same for S_R
  bool all() const { return correctness && low_weight && left_remainder && right_remainder; }
};

PartialDecodeCheck check_partial_decode(const PartialDecodeState& state, const BinMatrix& d0, const BinMatrix& dm1);

struct Len4Result {
  BinVector r;  // (r_a, r_b, r_c)
  BinMatrix R_a, R_b, R_c;
  PartialDecodeState state;
  RemainderDecomposition left, right;
  bool bound_guaranteed = true;  // |s| < t
  bool constructive = true;      // false: the pipeline failed and r came from plain elimination
  Rational remainder_bound_a{0};    // sum of f(|alpha_i|), f = x^2/4
  Rational remainder_bound_c{0};
};

// Constructive preimages for the first map of the double product of delta0.
class Len4Solver {
 public:
  explicit Len4Solver(const BinMatrix& delta0);

  const ChainComplex& single() const { return single_; }
  const ChainComplex& dbl() const { return double_; }
  const BinMatrix& d0() const { return d0_; }
  const BinMatrix& dm1() const { return dm1_; }

  // Throws std::invalid_argument when s fails the metachecks or is outside the image.
  Len4Result solve(const BinVector& s, std::optional<std::size_t> t) const;

  // Splits s into the reshaped S_L (n0 x n-1) and S_R (n1 x n0) blocks.
  std::pair<BinMatrix, BinMatrix> split(const BinVector& s) const;

 private:
  ChainComplex single_, double_;
  BinMatrix d0_, dm1_;
  std::size_t nm1_ = 0, n0_ = 0, n1_ = 0;
  Gf2Solver image_solver_;
  Gf2Solver rb_solver_;
  Len2Solver left_, right_;
};

Len4Result len4_preimage(const BinMatrix& delta0, const BinVector& s, std::optional<std::size_t> t);

}  // namespace homprod
