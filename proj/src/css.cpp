#include "homprod/css.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

namespace homprod {

struct CssCode::Cache {
  std::once_flag xd, zd, zm, xm, xa, za, xc, zc;
  std::unique_ptr<SubsetSearch> x_decoder, z_decoder, z_meta, x_meta, x_coset, z_coset;
  BinMatrix x_annihilator, z_annihilator;
  std::once_flag xs, zs;
  Gf2Solver z_check_solver;  // image test for z_part (delta_0)
  Gf2Solver x_check_solver;  // image test for x_part (delta_{-1}^T)
};

CssCode CssCode::from_complex(const ChainComplex& c) {
  const bool len2 = c.length() == 2 && c.min_level() == -1;
  const bool len4 = c.length() == 4 && c.min_level() == -2;
  if (!len2 && !len4)
    throw std::invalid_argument("a code needs a length-2 complex on -1..1 or length-4 on -2..2");
  CssCode code;
  code.complex_ = c;
  code.z_checks_ = c.map(0);
  code.x_checks_ = c.map(-1).transpose();
  if (len4) {
    code.z_meta_ = c.map(1);
    code.x_meta_ = c.map(-2).transpose();
  }
  code.cache_ = std::make_shared<Cache>();
  return code;
}

Syndrome CssCode::syndrome(const PauliError& e) const {
  if (e.x.size() != n() || e.z.size() != n()) throw std::invalid_argument("Pauli length mismatch");
  return {z_checks_ * e.x, x_checks_ * e.z};
}

BinVector CssCode::metasyndrome(const Syndrome& s) const {
  if (!has_metachecks()) throw std::invalid_argument("code has no metachecks");
  return BinVector::concat(z_meta_ * s.z_part, x_meta_ * s.x_part);
}

bool CssCode::is_valid_syndrome(const Syndrome& s) const {
  std::call_once(cache_->zs, [this] { cache_->z_check_solver = Gf2Solver(z_checks_); });
  std::call_once(cache_->xs, [this] { cache_->x_check_solver = Gf2Solver(x_checks_); });
  return cache_->z_check_solver.in_image(s.z_part) && cache_->x_check_solver.in_image(s.x_part);
}

bool CssCode::is_stabilizer(const PauliError& e) const {
  return (x_stabilizer_annihilator() * e.x).is_zero() && (z_stabilizer_annihilator() * e.z).is_zero();
}

const SubsetSearch& CssCode::x_decoder() const {
  std::call_once(cache_->xd, [this] { cache_->x_decoder = std::make_unique<SubsetSearch>(z_checks_); });
  return *cache_->x_decoder;
}

const SubsetSearch& CssCode::z_decoder() const {
  std::call_once(cache_->zd, [this] { cache_->z_decoder = std::make_unique<SubsetSearch>(x_checks_); });
  return *cache_->z_decoder;
}

const SubsetSearch& CssCode::z_meta_search() const {
  std::call_once(cache_->zm, [this] { cache_->z_meta = std::make_unique<SubsetSearch>(z_meta_); });
  return *cache_->z_meta;
}

const SubsetSearch& CssCode::x_meta_search() const {
  std::call_once(cache_->xm, [this] { cache_->x_meta = std::make_unique<SubsetSearch>(x_meta_); });
  return *cache_->x_meta;
}

const BinMatrix& CssCode::x_stabilizer_annihilator() const {
  std::call_once(cache_->xa, [this] { cache_->x_annihilator = image_annihilator(complex_.map(-1)); });
  return cache_->x_annihilator;
}

const BinMatrix& CssCode::z_stabilizer_annihilator() const {
  std::call_once(cache_->za, [this] { cache_->z_annihilator = image_annihilator(z_checks_.transpose()); });
  return cache_->z_annihilator;
}

const SubsetSearch& CssCode::x_coset_search() const {
  std::call_once(cache_->xc, [this] {
    cache_->x_coset = std::make_unique<SubsetSearch>(x_stabilizer_annihilator());
  });
  return *cache_->x_coset;
}

const SubsetSearch& CssCode::z_coset_search() const {
  std::call_once(cache_->zc, [this] {
    cache_->z_coset = std::make_unique<SubsetSearch>(z_stabilizer_annihilator());
  });
  return *cache_->z_coset;
}

namespace {

constexpr std::size_t kMaxCosetElements = 200'000;

struct CosetList {
  std::vector<BinVector> elements;  // by weight then lexicographic
  bool complete = true;
};

CosetList coset_elements(const SubsetSearch& search, const BinMatrix& annihilator, const BinVector& v,
                         std::size_t max_weight, const SearchBudget& budget) {
  CosetList out;
  const BinVector target = annihilator * v;
  SearchBudget b = budget;
  b.max_weight = max_weight;
  SearchOutcome o = search.for_each(target, b, [&](std::span<const std::size_t> s) {
    out.elements.push_back(BinVector::from_support(v.size(), s));
    return out.elements.size() < kMaxCosetElements;
  });
  if (o.status == SearchStatus::cost_limited || o.status == SearchStatus::found) out.complete = false;
  return out;
}

}  // namespace

WtMin wt_min(const CssCode& code, const PauliError& p, const SearchBudget& budget) {
  const std::size_t w = budget.max_weight;
  CosetList xs = coset_elements(code.x_coset_search(), code.x_stabilizer_annihilator(), p.x, w, budget);
  CosetList zs = coset_elements(code.z_coset_search(), code.z_stabilizer_annihilator(), p.z, w, budget);
  WtMin r;
  r.exact = xs.complete && zs.complete;
  std::optional<std::size_t> best;
  for (const auto& x : xs.elements) {
    const std::size_t wx = x.weight();
    if (best && wx >= *best) break;
    for (const auto& z : zs.elements) {
      if (best && z.weight() >= *best) break;
      const std::size_t u = union_weight(x, z);
      if (u <= w && (!best || u < *best)) {
        best = u;
        r.representative = {x, z};
      }
    }
  }
  r.weight = best;
  if (!best) r.representative = PauliError::identity(code.n());
  return r;
}

CheckStats check_stats(const CssCode& code) {
  CheckStats st;
  std::size_t total = 0;
  auto scan = [&](const BinMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const std::size_t w = m.row(r).weight();
      st.max_check_weight = std::max(st.max_check_weight, w);
      total += w;
      ++st.num_checks;
    }
  };
  scan(code.z_checks());
  scan(code.x_checks());
  if (st.num_checks)
    st.mean_check_weight = Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(st.num_checks));
  auto zdeg = code.z_checks().column_weights();
  auto xdeg = code.x_checks().column_weights();
  for (std::size_t q = 0; q < code.n(); ++q)
    st.max_qubit_degree = std::max(st.max_qubit_degree, zdeg[q] + xdeg[q]);
  return st;
}

CodeReport code_report(const CssCode& code, const SearchBudget& budget) {
  const ChainComplex& c = code.complex();
  CodeReport r;
  r.n = code.n();
  r.k = betti(c, 0);
  r.d_0 = homological_distance(c, 0, budget);
  r.d_m1_t = cohomological_distance(c, -1, budget);
  r.d_q = min_distance(r.d_0, r.d_m1_t);
  if (code.has_metachecks()) {
    r.d_1 = homological_distance(c, 1, budget);
    r.d_m2_t = cohomological_distance(c, -2, budget);
    r.d_ss = min_distance(r.d_1, r.d_m2_t);
  } else {
    r.d_1 = r.d_m2_t = r.d_ss = Distance::infinity();
    r.notes.push_back("no metachecks: single-shot distance not defined, reported as inf");
  }
  if (r.n > r.k) r.redundancy = redundancy(c);
  r.stats = check_stats(code);
  return r;
}

namespace {

// All nontrivial cycles of minimum weight at level j, capped.
std::vector<BinVector> min_weight_cycles(const ChainComplex& c, int j, const SearchBudget& budget,
                                         std::size_t cap) {
  std::vector<BinVector> out;
  const Distance d = homological_distance(c, j, budget);
  if (d.infinite() || d.status != BoundStatus::exact) return out;
  BinMatrix reps = cohomology_representatives(c, j);
  SubsetSearch search(c.map(j), reps);
  SearchBudget b = budget;
  b.max_weight = *d.value;
  search.for_each(
      BinVector(c.size(j + 1)), b,
      [&](std::span<const std::size_t> s) {
        if (s.size() == *d.value) out.push_back(BinVector::from_support(c.size(j), s));
        return out.size() < cap;
      },
      [](std::span<const std::uint64_t> tag) {
        return std::any_of(tag.begin(), tag.end(), [](std::uint64_t w) { return w != 0; });
      });
  return out;
}

BinVector embed_product(std::size_t total, std::size_t offset, std::size_t n_right, const BinVector& u,
                        const BinVector& v) {
  BinVector r(total);
  for (std::size_t p : u.support())
    for (std::size_t q : v.support()) r.set(offset + p * n_right + q);
  return r;
}

std::size_t greedy_disjoint(std::vector<BinVector> cands) {
  std::sort(cands.begin(), cands.end(), [](const BinVector& a, const BinVector& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return support_less(a, b);
  });
  std::size_t best = 0;
  // a few deterministic starting points; each start is followed by a greedy pass
  for (std::size_t start = 0; start < std::min<std::size_t>(cands.size(), 16); ++start) {
    BinVector used(cands.empty() ? 0 : cands[0].size());
    std::size_t count = 0;
    auto try_add = [&](const BinVector& v) {
      if (union_weight(used, v) == used.weight() + v.weight()) {
        used += v;
        ++count;
      }
    };
    try_add(cands[start]);
    for (const auto& v : cands) try_add(v);
    best = std::max(best, count);
  }
  return best;
}

void tighten(Distance& d, std::size_t lower, std::optional<std::size_t> upper,
             std::optional<BinVector> witness) {
  if (d.infinite()) return;
  if (d.status == BoundStatus::exact) return;
  d.value = std::max(*d.value, lower);
  if (upper && (!d.upper_bound || *upper < *d.upper_bound)) {
    d.upper_bound = upper;
    d.witness = std::move(witness);
  }
  if (d.upper_bound && *d.upper_bound <= *d.value) {
    d.value = d.upper_bound;
    d.status = BoundStatus::exact;
    d.upper_bound.reset();
  }
}

}  // namespace

void refine_double_product_report(CodeReport& report, const CssCode& code, const ChainComplex& single,
                                  const SearchBudget& budget) {
  const ChainComplex& dbl = code.complex();
  if (single.length() != 2 || dbl.length() != 4)
    throw std::invalid_argument("refinement needs the single product and its double product");
  const ProductPrediction pred = predict_params(single, budget);
  auto predicted = [&](const std::string& q) -> std::size_t {
    for (const auto& p : pred.distances)
      if (p.quantity == q && p.value) return *p.value;
    return 0;
  };

  // Product-form candidates at the qubit level: u (x) v in block (i, i) with u, v minimum-weight
  // cycles or cocycles of the single product at level i.
  const ChainComplex dual = single.dual();
  std::vector<BinVector> cycles_d, cocycles_d;
  const BinMatrix hom0 = homology_representatives(dbl, 0);
  const BinMatrix coh0 = cohomology_representatives(dbl, 0);
  const BinMatrix dm1_t = dbl.map(-1).transpose();
  const BinMatrix d0 = dbl.map(0);
  // The single product is small; its minimum-weight cycles are searched past the report budget.
  SearchBudget single_budget = budget;
  single_budget.max_weight = std::max<std::size_t>(budget.max_weight, 8);
  for (const auto& blk : product_level_blocks(single, single, 0)) {
    std::vector<BinVector> pool = min_weight_cycles(single, blk.i, single_budget, 64);
    for (auto& v : min_weight_cycles(dual, -blk.i, single_budget, 64)) pool.push_back(std::move(v));
    const std::size_t ni = single.size(blk.i);
    for (const auto& u : pool)
      for (const auto& v : pool) {
        BinVector r = embed_product(dbl.size(0), blk.offset, ni, u, v);
        if ((d0 * r).is_zero() && !(coh0 * r).is_zero()) cycles_d.push_back(r);
        if ((dm1_t * r).is_zero() && !(hom0 * r).is_zero()) cocycles_d.push_back(r);
      }
  }
  auto lightest = [](const std::vector<BinVector>& v) -> std::optional<BinVector> {
    if (v.empty()) return std::nullopt;
    return *std::min_element(v.begin(), v.end(), [](const BinVector& a, const BinVector& b) {
      return a.weight() < b.weight() || (a.weight() == b.weight() && support_less(a, b));
    });
  };
  const auto wx = lightest(cycles_d);
  const auto wz = lightest(cocycles_d);

  std::size_t cert_x = 0, cert_z = 0;
  if (report.k == 1) {
    // Every nontrivial cycle meets each nontrivial cocycle, so disjoint cocycles bound its weight.
    cert_x = greedy_disjoint(cocycles_d);
    cert_z = greedy_disjoint(cycles_d);
    report.notes.push_back("k = 1: disjoint representatives give d_0 >= " + std::to_string(cert_x) +
                           " and d_-1^T >= " + std::to_string(cert_z));
  }
  tighten(report.d_0, std::max(predicted("d_0"), cert_x),
          wx ? std::optional<std::size_t>(wx->weight()) : std::nullopt, wx);
  tighten(report.d_m1_t, std::max(predicted("d_-1^T"), cert_z),
          wz ? std::optional<std::size_t>(wz->weight()) : std::nullopt, wz);
  tighten(report.d_1, predicted("d_1"), std::nullopt, std::nullopt);
  tighten(report.d_m2_t, predicted("d_-2^T"), std::nullopt, std::nullopt);
  report.d_q = min_distance(report.d_0, report.d_m1_t);
  if (code.has_metachecks()) report.d_ss = min_distance(report.d_1, report.d_m2_t);
}

}  // namespace homprod
