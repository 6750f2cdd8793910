#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "homprod/chain.hpp"
#include "homprod/gf2.hpp"
#include "homprod/product.hpp"
#include "homprod/rational.hpp"
#include "homprod/search.hpp"

namespace homprod {

// X[x] Z[z] up to phase.
struct PauliError {
  BinVector x;
  BinVector z;

  static PauliError identity(std::size_t n) { return {BinVector(n), BinVector(n)}; }
  std::size_t size() const { return x.size(); }
  std::size_t weight() const { return union_weight(x, z); }
  bool is_identity() const { return x.is_zero() && z.is_zero(); }
  PauliError& operator*=(const PauliError& o) {
    x += o.x;
    z += o.z;
    return *this;
  }
  friend PauliError operator*(PauliError a, const PauliError& b) { return a *= b; }
  friend bool operator==(const PauliError&, const PauliError&) = default;
};

struct Syndrome {
  BinVector z_part;  // outcomes of Z checks (delta_0 x)
  BinVector x_part;  // outcomes of X checks (delta_{-1}^T z)

  std::size_t weight() const { return z_part.weight() + x_part.weight(); }
  bool is_zero() const { return z_part.is_zero() && x_part.is_zero(); }
  BinVector stacked() const { return BinVector::concat(z_part, x_part); }
  Syndrome& operator+=(const Syndrome& o) {
    z_part += o.z_part;
    x_part += o.x_part;
    return *this;
  }
  friend Syndrome operator+(Syndrome a, const Syndrome& b) { return a += b; }
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

class CssCode {
 public:
  // Length-2 complex on -1..1 or length-4 complex on -2..2.
  static CssCode from_complex(const ChainComplex& c);

  std::size_t n() const { return complex_.size(0); }
  const ChainComplex& complex() const { return complex_; }
  const BinMatrix& z_checks() const { return z_checks_; }
  const BinMatrix& x_checks() const { return x_checks_; }
  bool has_metachecks() const { return complex_.length() == 4; }
  const BinMatrix& z_metachecks() const { return z_meta_; }
  const BinMatrix& x_metachecks() const { return x_meta_; }

  Syndrome syndrome(const PauliError& e) const;
  // H = diag(delta_1, delta_{-2}^T) applied to (z_part ; x_part).
  BinVector metasyndrome(const Syndrome& s) const;
  // s lies in the image of the syndrome map.
  bool is_valid_syndrome(const Syndrome& s) const;
  bool is_stabilizer(const PauliError& e) const;

  // Search helpers, built on first use.
  const SubsetSearch& x_decoder() const;  // columns of z_checks
  const SubsetSearch& z_decoder() const;  // columns of x_checks
  const SubsetSearch& z_meta_search() const;
  const SubsetSearch& x_meta_search() const;
  const BinMatrix& x_stabilizer_annihilator() const;  // rows annihilate im delta_{-1}
  const BinMatrix& z_stabilizer_annihilator() const;  // rows annihilate im delta_0^T
  const SubsetSearch& x_coset_search() const;
  const SubsetSearch& z_coset_search() const;

 private:
  struct Cache;
  ChainComplex complex_;
  BinMatrix z_checks_, x_checks_, z_meta_, x_meta_;
  std::shared_ptr<Cache> cache_;
};

struct WtMin {
  std::optional<std::size_t> weight;  // nullopt: exceeds the weight budget
  bool exact = true;                  // false if a cost limit cut the enumeration short
  PauliError representative;          // a minimum-weight element of P times the stabiliser
};

// min wt(P S) over stabilisers S, exact whenever it is at most budget.max_weight.
WtMin wt_min(const CssCode& code, const PauliError& p, const SearchBudget& budget);

struct CheckStats {
  std::size_t num_checks = 0;
  std::size_t max_check_weight = 0;
  Rational mean_check_weight{0};
  std::size_t max_qubit_degree = 0;  // checks acting on one qubit, X and Z together
};

CheckStats check_stats(const CssCode& code);

struct CodeReport {
  std::size_t n = 0;
  std::size_t k = 0;
  Distance d_q;
  Distance d_ss;
  Distance d_0, d_m1_t, d_1, d_m2_t;
  std::optional<Rational> redundancy;
  CheckStats stats;
  std::vector<std::string> notes;
};

CodeReport code_report(const CssCode& code, const SearchBudget& budget);

// Tightens the distance fields of a report for a double-product code using the product
// structure: lower bounds from the single-product distances, product-form upper-bound
// witnesses, and, when k = 1, a lower bound from pairwise-disjoint dual representatives.
void refine_double_product_report(CodeReport& report, const CssCode& code,
                                  const ChainComplex& single, const SearchBudget& budget);

}  // namespace homprod
