#include "homprod/product.hpp"

#include <algorithm>
#include <stdexcept>

namespace homprod {

std::vector<ProductBlock> product_level_blocks(const ChainComplex& a, const ChainComplex& b, int m) {
  std::vector<ProductBlock> blocks;
  std::size_t offset = 0;
  for (int i = a.min_level(); i <= a.max_level(); ++i) {
    const int j = i - m;
    if (!b.has_level(j)) continue;
    const std::size_t size = a.size(i) * b.size(j);
    blocks.push_back({i, j, offset, size});
    offset += size;
  }
  return blocks;
}

namespace {

std::size_t level_total(const std::vector<ProductBlock>& blocks) {
  return blocks.empty() ? 0 : blocks.back().offset + blocks.back().size;
}

const ProductBlock* find_block(const std::vector<ProductBlock>& blocks, int i, int j) {
  for (const auto& blk : blocks)
    if (blk.i == i && blk.j == j) return &blk;
  return nullptr;
}

}  // namespace

ChainComplex tensor_product(const ChainComplex& a, const ChainComplex& b) {
  const int lo = a.min_level() - b.max_level();
  const int hi = a.max_level() - b.min_level();
  if (lo == hi) return ChainComplex::single_level(lo, a.size(a.min_level()) * b.size(b.min_level()));
  std::vector<BinMatrix> maps;
  for (int m = lo; m < hi; ++m) {
    const auto src = product_level_blocks(a, b, m);
    const auto dst = product_level_blocks(a, b, m + 1);
    BinMatrix d(level_total(dst), level_total(src));
    for (const auto& blk : src) {
      const std::size_t na = a.size(blk.i);
      const std::size_t nb = b.size(blk.j);
      // (delta^A_i (x) 1) into block (i+1, j)
      if (const ProductBlock* t = find_block(dst, blk.i + 1, blk.j)) {
        const BinMatrix da = a.map(blk.i);
        for (std::size_t r = 0; r < da.rows(); ++r)
          for (std::size_t c : da.row(r).support())
            for (std::size_t k = 0; k < nb; ++k) d.set(t->offset + r * nb + k, blk.offset + c * nb + k);
      }
      // (1 (x) (delta^B_{j-1})^T) into block (i, j-1)
      if (const ProductBlock* t = find_block(dst, blk.i, blk.j - 1)) {
        const BinMatrix db = b.map(blk.j - 1);  // B_{j-1} -> B_j
        const std::size_t nb_lo = b.size(blk.j - 1);
        for (std::size_t r = 0; r < db.rows(); ++r)
          for (std::size_t c : db.row(r).support())
            for (std::size_t x = 0; x < na; ++x)
              d.set(t->offset + x * nb_lo + c, blk.offset + x * nb + r);
      }
    }
    maps.push_back(std::move(d));
  }
  return ChainComplex(lo, std::move(maps));
}

ChainComplex single_product(const ChainComplex& c) {
  if (c.length() != 1 || c.min_level() != 0)
    throw std::invalid_argument("single product needs a length-1 complex on levels 0..1");
  return tensor_product(c, c);
}

ChainComplex double_product(const ChainComplex& c) {
  if (c.length() != 2 || c.min_level() != -1)
    throw std::invalid_argument("double product needs a length-2 complex on levels -1..1");
  return tensor_product(c, c);
}

Rational redundancy(const ChainComplex& c) {
  if (!c.has_level(0)) throw std::invalid_argument("complex has no qubit level");
  const std::size_t n0 = c.size(0);
  const std::size_t k0 = betti(c, 0);
  if (n0 == k0) throw std::invalid_argument("redundancy undefined: n_0 equals k_0");
  return Rational(static_cast<std::int64_t>(c.size(1) + c.size(-1)),
                  static_cast<std::int64_t>(n0 - k0));
}

namespace {

// Distance arithmetic on "value or infinity", with a flag recording whether it is exact.
struct Dv {
  std::optional<std::size_t> v;
  bool exact = true;
};

Dv from(const Distance& d) { return {d.value, d.status == BoundStatus::exact}; }

Dv times(Dv a, Dv b) {
  if (!a.v || !b.v) {
    // infinity is exact only when it comes from trivial homology, which is exact
    bool exact = (!a.v && a.exact) || (!b.v && b.exact);
    return {std::nullopt, exact};
  }
  return {*a.v * *b.v, a.exact && b.exact};
}

Dv min_of(std::initializer_list<Dv> xs) {
  Dv out{std::nullopt, true};
  for (const Dv& x : xs) {
    if (!x.v) continue;
    if (!out.v || *x.v < *out.v) out = x;
  }
  return out;
}

Dv max_of(Dv a, Dv b) {
  if (!a.v) return a;
  if (!b.v) return b;
  return *a.v >= *b.v ? a : b;
}

DistancePrediction make(const std::string& name, int level, bool co, Relation rel, Dv d) {
  if (rel == Relation::equal && !d.exact) rel = Relation::at_least;
  return {name, level, co, rel, d.v};
}

void kunneth(const ChainComplex& c, ProductPrediction& p) {
  const int lo = c.min_level() - c.max_level();
  const int hi = c.max_level() - c.min_level();
  for (int m = lo; m <= hi; ++m) {
    std::size_t n = 0, k = 0;
    for (int i = c.min_level(); i <= c.max_level(); ++i) {
      const int j = i - m;
      if (!c.has_level(j)) continue;
      n += c.size(i) * c.size(j);
      k += betti(c, i) * betti(c, j);
    }
    p.level_sizes[m] = n;
    p.level_bettis[m] = k;
  }
  const std::size_t denom = p.level_sizes[0] - p.level_bettis[0];
  if (denom > 0)
    p.redundancy = Rational(static_cast<std::int64_t>(p.level_sizes[1] + p.level_sizes[-1]),
                            static_cast<std::int64_t>(denom));
}

}  // namespace

ProductPrediction predict_params(const ChainComplex& c, const SearchBudget& budget) {
  ProductPrediction p;
  if (c.length() == 1 && c.min_level() == 0) {
    p.stages = 1;
    kunneth(c, p);
    const std::size_t n = c.size(0), m = c.size(1), k = betti(c, 0);
    if (n > k) {
      // single-product redundancy from the input's checks per rank
      const Rational u(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n - k));
      const Rational nn(static_cast<std::int64_t>(n)), kk(static_cast<std::int64_t>(k));
      p.redundancy = u * nn / (u * (nn - kk) + kk);
    }
    const Dv d0 = from(homological_distance(c, 0, budget));
    const Dv d0t = from(cohomological_distance(c, 0, budget));
    const Dv prod = times(d0, d0t);
    const Dv lo = min_of({d0, d0t});
    p.distances.push_back(make("d_-1", -1, false, Relation::equal, prod));
    p.distances.push_back(make("d_0^T", 0, true, Relation::equal, prod));
    p.distances.push_back(make("d_0", 0, false, Relation::at_least, lo));
    p.distances.push_back(make("d_-1^T", -1, true, Relation::at_least, lo));
    return p;
  }
  if (c.length() == 2 && c.min_level() == -1) {
    p.stages = 2;
    kunneth(c, p);
    p.redundancy_bound = Rational(2) * redundancy(c);
    const Dv a = from(homological_distance(c, -1, budget));
    const Dv b = from(homological_distance(c, 0, budget));
    const Dv bt = from(cohomological_distance(c, -1, budget));
    const Dv ct = from(cohomological_distance(c, 0, budget));
    const Dv q = min_of({a, max_of(b, bt), ct});
    const Dv ss = min_of({b, bt});
    p.distances.push_back(make("d_0", 0, false, Relation::at_least, q));
    p.distances.push_back(make("d_-1^T", -1, true, Relation::at_least, q));
    p.distances.push_back(make("d_1", 1, false, Relation::at_least, ss));
    p.distances.push_back(make("d_-2^T", -2, true, Relation::at_least, ss));
    return p;
  }
  throw std::invalid_argument("prediction needs a length-1 complex on 0..1 or length-2 on -1..1");
}

MinimalDoubleSizes minimal_double_sizes(std::size_t n, std::size_t k) {
  const std::size_t r = n - k;
  return {n * n * n * n + 4 * n * n * r * r + r * r * r * r, 2 * n * r * (n * n + r * r)};
}

ProductTower build_tower(const BinMatrix& h, int stages, bool require_minimal) {
  if (stages != 1 && stages != 2) throw std::invalid_argument("stages must be 1 or 2");
  ProductTower t{require_minimal ? minimal_complex(h) : classical_complex(h), {}, {}};
  t.single = single_product(t.classical);
  if (stages == 2) t.dbl = double_product(t.single);
  return t;
}

}  // namespace homprod
