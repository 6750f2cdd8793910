#include "homprod/soundness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "homprod/parallel.hpp"
#include "homprod/product.hpp"

namespace homprod {

namespace {

struct VectorHash {
  std::size_t operator()(const BinVector& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (std::uint64_t w : v.words()) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

struct Preimage {
  std::size_t weight;
  BinVector r;
};

using PreimageTable = std::unordered_map<BinVector, Preimage, VectorHash>;

// Visits every size-k subset of {0..n-1} in lexicographic order; fn returns false to stop.
bool for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Minimum-weight preimage of every syndrome, by Gray-code walk over the whole domain.
PreimageTable full_preimage_table(const BinMatrix& delta) {
  const std::size_t n = delta.cols();
  if (n > 26) throw std::invalid_argument("full enumeration needs at most 26 columns");
  std::vector<BinVector> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = delta.column(c);
  PreimageTable table;
  BinVector r(n);
  BinVector s(delta.rows());
  table.emplace(s, Preimage{0, r});
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    std::size_t bit = static_cast<std::size_t>(__builtin_ctzll(g));
    r.flip(bit);
    s += cols[bit];
    std::size_t w = r.weight();
    auto it = table.find(s);
    if (it == table.end()) {
      table.emplace(s, Preimage{w, r});
    } else if (w < it->second.weight || (w == it->second.weight && support_less(r, it->second.r))) {
      it->second = Preimage{w, r};
    }
  }
  return table;
}

// Minimum preimages of the syndromes reached by some |r| <= w_max; weight order makes the
// first hit minimal.
PreimageTable bounded_preimage_table(const BinMatrix& delta, std::size_t w_max) {
  const std::size_t n = delta.cols();
  std::vector<BinVector> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = delta.column(c);
  PreimageTable table;
  for (std::size_t w = 0; w <= std::min(w_max, n); ++w) {
    for_each_combination(n, w, [&](const std::vector<std::size_t>& idx) {
      BinVector s(delta.rows());
      for (std::size_t c : idx) s += cols[c];
      if (!table.count(s)) table.emplace(s, Preimage{w, BinVector::from_support(n, idx)});
      return true;
    });
  }
  return table;
}

bool exceeds(std::size_t weight, const PowerLaw& f, std::size_t x) {
  return Rational(static_cast<std::int64_t>(weight)) > f(x);
}

std::vector<ProfileEntry> entries_from_table(const PreimageTable& table, std::size_t x_max) {
  std::vector<ProfileEntry> map(x_max + 1);
  for (std::size_t x = 0; x <= x_max; ++x) map[x].x = x;
  for (const auto& [s, pre] : table) {
    std::size_t x = s.weight();
    if (x > x_max) continue;
    ProfileEntry& e = map[x];
    ++e.syndromes;
    if (e.syndromes == 1 || pre.weight > e.worst || (pre.weight == e.worst && support_less(s, e.worst_syndrome))) {
      e.worst = pre.weight;
      e.worst_syndrome = s;
    }
  }
  return map;
}

Verdict verdict_from_table(const BinMatrix& delta, const PreimageTable& table, std::optional<std::size_t> t,
                           const PowerLaw& f) {
  Verdict v;
  v.kind = VerdictKind::certified;
  // Deterministic choice: smallest x, then smallest syndrome.
  const BinVector* bad = nullptr;
  const Preimage* bad_pre = nullptr;
  for (const auto& [s, pre] : table) {
    std::size_t x = s.weight();
    if (t && x >= *t) continue;
    ++v.syndromes_checked;
    if (!exceeds(pre.weight, f, x)) continue;
    if (!bad || x < bad->weight() || (x == bad->weight() && support_less(s, *bad))) {
      bad = &s;
      bad_pre = &pre;
    }
  }
  if (bad) {
    v.kind = VerdictKind::counterexample;
    v.counterexample = Counterexample{bad_pre->r, *bad, bad->weight(), bad_pre->weight};
  }
  (void)delta;
  return v;
}

}  // namespace

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::certified:
      return "certified";
    case VerdictKind::counterexample:
      return "counterexample";
    case VerdictKind::budget_limited:
      return "budget-limited";
  }
  return "unknown";
}

SoundnessProfile soundness_profile_r_first(const BinMatrix& delta, std::size_t w_domain_max, std::size_t x_max) {
  SoundnessProfile p;
  p.method = "r-first";
  PreimageTable table = bounded_preimage_table(delta, w_domain_max);
  p.map = entries_from_table(table, x_max);
  // Syndromes whose lightest preimage is above w_domain_max are never reached.
  for (auto& e : p.map) e.exact = w_domain_max >= delta.cols();
  p.verdict.kind = VerdictKind::budget_limited;
  p.verdict.detail = "domain limited to |r| <= " + std::to_string(w_domain_max);
  return p;
}

SoundnessProfile soundness_profile_image_first(const BinMatrix& delta, std::size_t w_domain_max, std::size_t x_max,
                                               const SearchBudget& budget) {
  SoundnessProfile p;
  p.method = "image-first";
  const std::size_t m = delta.rows();
  x_max = std::min(x_max, m);
  p.map.resize(x_max + 1);
  Gf2Solver solver(delta);
  SubsetSearch search(delta);
  SearchBudget b = budget;
  b.max_weight = w_domain_max;
  std::vector<bool> complete(x_max + 1, true);
  parallel_for(x_max + 1, [&](std::size_t x) {
    ProfileEntry e;
    e.x = x;
    if (choose(m, x) > 2e7) {
      complete[x] = false;
      e.exact = false;
      p.map[x] = e;
      return;
    }
    for_each_combination(m, x, [&](const std::vector<std::size_t>& idx) {
      BinVector s = BinVector::from_support(m, idx);
      if (!solver.in_image(s)) return true;
      ++e.syndromes;
      MinWeightResult r = min_weight_solution(search, s, b);
      std::size_t w;
      if (r.status == SearchStatus::found) {
        w = r.x.weight();
      } else {
        w = r.covered_weight + 1;
        e.exact = false;
      }
      if (e.syndromes == 1 || w > e.worst) {
        e.worst = w;
        e.worst_syndrome = s;
      }
      return true;
    });
    p.map[x] = e;
  });
  p.verdict.kind = VerdictKind::budget_limited;
  for (std::size_t x = 0; x <= x_max; ++x) {
    if (!complete[x]) p.verdict.detail = "syndrome weight " + std::to_string(x) + " skipped: too many subsets";
  }
  return p;
}

SoundnessProfile soundness_profile(const BinMatrix& delta, std::size_t w_domain_max, std::size_t x_max,
                                   std::optional<std::size_t> t_claimed, PowerLaw f_claimed,
                                   const SearchBudget& budget) {
  SoundnessProfile p;
  if (delta.cols() <= 20) {
    PreimageTable table = full_preimage_table(delta);
    p.method = "full";
    p.map = entries_from_table(table, std::min(x_max, delta.rows()));
    p.verdict = verdict_from_table(delta, table, t_claimed, f_claimed);
  } else {
    p = soundness_profile_image_first(delta, w_domain_max, x_max, budget);
    Verdict v;
    bool covered = t_claimed && *t_claimed <= x_max + 1;
    for (const auto& e : p.map) {
      if (t_claimed && e.x >= *t_claimed) break;
      v.syndromes_checked += e.syndromes;
      if (e.syndromes == 0) continue;
      if (exceeds(e.worst, f_claimed, e.x)) {
        auto any = solve(delta, e.worst_syndrome);
        v.kind = VerdictKind::counterexample;
        v.counterexample = Counterexample{*any, e.worst_syndrome, e.x, e.worst};
        break;
      }
      if (!e.exact) covered = false;
    }
    if (v.kind != VerdictKind::counterexample) {
      v.kind = covered && p.verdict.detail.empty() ? VerdictKind::certified : VerdictKind::budget_limited;
    }
    v.detail = p.verdict.detail;
    p.verdict = v;
  }
  p.t_claimed = t_claimed;
  p.f_claimed = f_claimed;
  return p;
}

Verdict certify(const BinMatrix& delta, std::optional<std::size_t> t, PowerLaw f, const SearchBudget& budget) {
  if (delta.cols() <= 20) {
    return verdict_from_table(delta, full_preimage_table(delta), t, f);
  }
  Verdict v;
  const std::size_t m = delta.rows();
  std::size_t x_limit = t ? (*t == 0 ? 0 : *t - 1) : std::min(budget.max_weight, m);
  x_limit = std::min(x_limit, m);
  bool complete = static_cast<bool>(t);
  Gf2Solver solver(delta);
  SubsetSearch search(delta);
  for (std::size_t x = 1; x <= x_limit && v.kind != VerdictKind::counterexample; ++x) {
    if (choose(m, x) > 2e7) {
      complete = false;
      v.detail = "syndrome weight " + std::to_string(x) + " skipped: too many subsets";
      break;
    }
    SearchBudget b = budget;
    b.max_weight = static_cast<std::size_t>(std::floor(to_double(f(x)) + 1e-9));
    for_each_combination(m, x, [&](const std::vector<std::size_t>& idx) {
      BinVector s = BinVector::from_support(m, idx);
      if (!solver.in_image(s)) return true;
      ++v.syndromes_checked;
      MinWeightResult r = min_weight_solution(search, s, b);
      if (r.status == SearchStatus::found) return true;
      if (r.status == SearchStatus::none_within_weight) {
        v.kind = VerdictKind::counterexample;
        v.counterexample = Counterexample{*solver.solve(s), s, x, b.max_weight + 1};
        return false;
      }
      complete = false;
      return true;
    });
  }
  if (v.kind != VerdictKind::counterexample) {
    v.kind = complete ? VerdictKind::certified : VerdictKind::budget_limited;
  }
  return v;
}

Verdict certify_checks(const BinMatrix& checks, std::optional<std::size_t> t, PowerLaw f) {
  if (checks.cols() % 2 != 0) throw std::invalid_argument("symplectic checks need an even number of columns");
  const std::size_t n = checks.cols() / 2;
  if (n > 10) throw std::invalid_argument("exhaustive Pauli enumeration limited to 10 qubits");
  // Syndrome bit i of Pauli (x|z) is x.z(g_i) + z.x(g_i): column q contributes z(g)_q for X_q
  // and x(g)_q for Z_q.
  std::vector<BinVector> x_effect(n), z_effect(n);
  for (std::size_t q = 0; q < n; ++q) {
    x_effect[q] = checks.column(n + q);
    z_effect[q] = checks.column(q);
  }
  PreimageTable table;
  for (std::size_t w = 0; w <= n; ++w) {
    for_each_combination(n, w, [&](const std::vector<std::size_t>& idx) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < w; ++i) combos *= 3;
      for (std::size_t code = 0; code < combos; ++code) {
        BinVector s(checks.rows());
        BinVector pauli(2 * n);
        std::size_t c = code;
        for (std::size_t q : idx) {
          std::size_t kind = c % 3;  // 0: X, 1: Z, 2: Y
          c /= 3;
          if (kind != 1) {
            s += x_effect[q];
            pauli.set(q);
          }
          if (kind != 0) {
            s += z_effect[q];
            pauli.set(n + q);
          }
        }
        if (!table.count(s)) table.emplace(s, Preimage{w, pauli});
      }
      return true;
    });
  }
  return verdict_from_table(checks, table, t, f);
}

// ---- length-2 constructive preimage ----

Len2Solver::Len2Solver(const BinMatrix& delta0, Len2Map which) : which_(which) {
  ChainComplex single = single_product(classical_complex(delta0));
  const std::size_t n = delta0.cols();
  const std::size_t m = delta0.rows();
  if (which == Len2Map::zero_transpose) {
    map_ = single.map(0).transpose();
    r_rows_ = m;
    r_cols_ = n;
    col_kernel_map_ = delta0.transpose();
    row_kernel_map_ = delta0;
  } else {
    map_ = single.map(-1);
    r_rows_ = n;
    r_cols_ = m;
    col_kernel_map_ = delta0;
    row_kernel_map_ = delta0.transpose();
  }
  solver_ = Gf2Solver(map_);
}

std::size_t Len2Solver::reduce(BinMatrix& r) const {
  std::size_t transforms = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < r.cols() && !changed; ++j) {
      BinVector a = r.column(j);
      if (a.is_zero() || !(col_kernel_map_ * a).is_zero()) continue;
      for (std::size_t i : a.support()) {
        BinVector b = r.row(i);
        if (!(row_kernel_map_ * b).is_zero()) continue;
        for (std::size_t k : a.support()) r.row(k) += b;
        ++transforms;
        changed = true;
        break;
      }
    }
  }
  return transforms;
}

Len2Result Len2Solver::solve(const BinVector& s, std::optional<std::size_t> t) const {
  if (s.size() != map_.rows()) throw std::invalid_argument("syndrome has the wrong length");
  auto x = solver_.solve(s);
  if (!x) throw std::invalid_argument("syndrome is not in the image");
  BinMatrix r = reshape(*x, r_rows_, r_cols_);
  Len2Result out;
  out.transforms = reduce(r);
  out.col_support = colsupp(r).size();
  out.row_support = rowsupp(r).size();
  out.r = flatten(r);
  if (!(map_ * out.r == s)) throw std::logic_error("length-2 preimage does not reproduce the syndrome");
  out.bound_guaranteed = !t || s.weight() < *t;
  return out;
}

Len2Result len2_preimage(const BinMatrix& delta0, Len2Map which, const BinVector& s, std::optional<std::size_t> t) {
  return Len2Solver(delta0, which).solve(s, t);
}

// ---- partial decoder ----

namespace {

// Smallest element of sorted a that is missing from sorted b.
std::optional<std::size_t> first_missing(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t j = 0;
  for (std::size_t v : a) {
    while (j < b.size() && b[j] < v) ++j;
    if (j == b.size() || b[j] != v) return v;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_common(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t j = 0;
  for (std::size_t v : a) {
    while (j < b.size() && b[j] < v) ++j;
    if (j < b.size() && b[j] == v) return v;
  }
  return std::nullopt;
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return !first_missing(a, b).has_value();
}

// R += u v^T
void add_outer(BinMatrix& r, const BinVector& u, const BinVector& v) {
  for (std::size_t i : u.support()) r.row(i) += v;
}

}  // namespace

PartialDecodeState make_partial_state(BinMatrix R_b, BinMatrix S_L, BinMatrix S_R, const BinMatrix& d0,
                                      const BinMatrix& dm1) {
  if (R_b.rows() != d0.cols() || R_b.cols() != dm1.rows()) throw std::invalid_argument("R_b has the wrong shape");
  if (S_L.rows() != R_b.rows() || S_L.cols() != dm1.cols()) throw std::invalid_argument("S_L has the wrong shape");
  if (S_R.rows() != d0.rows() || S_R.cols() != R_b.cols()) throw std::invalid_argument("S_R has the wrong shape");
  PartialDecodeState st;
  st.M = d0 * R_b * dm1;
  if (!(d0 * S_L == st.M)) throw std::invalid_argument("M != d_0 S_L");
  if (!(S_R * dm1 == st.M)) throw std::invalid_argument("M != S_R d_m1");
  st.R_b = std::move(R_b);
  st.S_L = std::move(S_L);
  st.S_R = std::move(S_R);
  return st;
}

void partial_decode_Rb(PartialDecodeState& st, const BinMatrix& d0, const BinMatrix& dm1, std::size_t max_passes) {
  BinMatrix& R = st.R_b;
  const std::size_t cap = R.rows() * R.cols() + R.rows() + R.cols() + 16;
  auto check_m = [&](int loop) {
    if (!(d0 * R * dm1 == st.M)) throw std::logic_error("loop " + std::to_string(loop) + " changed M");
  };
  auto bump = [&](int loop, std::size_t& iterations) {
    ++st.loop_counters[loop - 1];
    if (++iterations > cap) throw std::logic_error("loop " + std::to_string(loop) + " did not terminate");
    check_m(loop);
  };
  const auto rs_L = rowsupp(st.S_L), cs_L = colsupp(st.S_L);
  const auto rs_R = rowsupp(st.S_R), cs_R = colsupp(st.S_R);

  st.converged = false;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    ++st.passes;
    const BinMatrix before = R;
    std::size_t it;

    it = 0;
    while (true) {
      BinMatrix P = R * dm1;
      auto i = first_missing(rowsupp(P), rs_L);
      if (!i) break;
      BinVector v = R.row(*i);
      std::size_t j = P.row(*i).support().front();
      BinVector w = P.column(j) + st.S_L.column(j);
      add_outer(R, w, v);
      bump(1, it);
    }

    it = 0;
    while (true) {
      BinMatrix P = R * dm1;
      auto j = first_missing(colsupp(P), cs_L);
      if (!j) break;
      BinVector c = P.column(*j);
      auto k = first_common(rowsupp(R), c.support());
      BinVector v = R.row(*k);
      add_outer(R, c, v);
      bump(2, it);
    }

    it = 0;
    while (true) {
      BinMatrix P = R * dm1;
      auto j = first_missing(rowsupp(R), rowsupp(P));
      if (!j) break;
      R.set_row(*j, BinVector(R.cols()));
      bump(3, it);
    }

    it = 0;
    while (true) {
      BinMatrix Q = d0 * R;
      auto i = first_missing(colsupp(Q), cs_R);
      if (!i) break;
      BinVector v = R.column(*i);
      std::size_t j = Q.column(*i).support().front();
      BinVector w = Q.row(j) + st.S_R.row(j);
      add_outer(R, v, w);
      bump(4, it);
    }

    it = 0;
    while (true) {
      BinMatrix Q = d0 * R;
      auto j = first_missing(rowsupp(Q), rs_R);
      if (!j) break;
      BinVector v = Q.row(*j);
      auto k = first_common(colsupp(R), v.support());
      BinVector c = R.column(*k);
      add_outer(R, c, v);
      bump(5, it);
    }

    it = 0;
    while (true) {
      BinMatrix Q = d0 * R;
      auto j = first_missing(colsupp(R), colsupp(Q));
      if (!j) break;
      R.set_column(*j, BinVector(R.rows()));
      bump(6, it);
    }

    if (R == before) {
      st.converged = true;
      return;
    }
  }
}

std::array<bool, 6> terminal_conditions(const PartialDecodeState& st, const BinMatrix& d0, const BinMatrix& dm1) {
  BinMatrix P = st.R_b * dm1;
  BinMatrix Q = d0 * st.R_b;
  return {subset_of(rowsupp(P), rowsupp(st.S_L)), subset_of(colsupp(P), colsupp(st.S_L)),
          rowsupp(P) == rowsupp(st.R_b),          subset_of(colsupp(Q), colsupp(st.S_R)),
          subset_of(rowsupp(Q), rowsupp(st.S_R)), colsupp(Q) == colsupp(st.R_b)};
}

RemainderDecomposition left_remainder(const PartialDecodeState& st, const BinMatrix& dm1) {
  RemainderDecomposition d;
  d.side = RemainderDecomposition::Side::L;
  BinMatrix rem = st.S_L + st.R_b * dm1;
  for (std::size_t j : colsupp(rem)) d.terms.push_back({rem.column(j), j});
  return d;
}

RemainderDecomposition right_remainder(const PartialDecodeState& st, const BinMatrix& d0) {
  RemainderDecomposition d;
  d.side = RemainderDecomposition::Side::R;
  BinMatrix rem = st.S_R + d0 * st.R_b;
  for (std::size_t i : rowsupp(rem)) d.terms.push_back({rem.row(i), i});
  return d;
}

PartialDecodeCheck check_partial_decode(const PartialDecodeState& st, const BinMatrix& d0, const BinMatrix& dm1) {
  PartialDecodeCheck c;
  c.correctness = d0 * st.R_b * dm1 == st.M && d0 * st.S_L == st.M && st.S_R * dm1 == st.M;
  const std::size_t wl = st.S_L.weight(), wr = st.S_R.weight();
  c.low_weight = st.R_b.weight() <= wl * wr;

  BinMatrix lrem = st.S_L + st.R_b * dm1;
  auto left = left_remainder(st, dm1);
  c.left_remainder = left.terms.size() <= wl && subset_of(colsupp(lrem), colsupp(st.S_L)) &&
                     subset_of(rowsupp(lrem), rowsupp(st.S_L));
  for (const auto& term : left.terms) {
    c.left_remainder = c.left_remainder && term.vec.weight() <= wl && (d0 * term.vec).is_zero();
  }

  BinMatrix rrem = st.S_R + d0 * st.R_b;
  auto right = right_remainder(st, d0);
  const BinMatrix dm1_t = dm1.transpose();
  c.right_remainder = right.terms.size() <= wr && subset_of(colsupp(rrem), colsupp(st.S_R)) &&
                      subset_of(rowsupp(rrem), rowsupp(st.S_R));
  for (const auto& term : right.terms) {
    c.right_remainder = c.right_remainder && term.vec.weight() <= wr && (dm1_t * term.vec).is_zero();
  }
  return c;
}

// ---- length-4 constructive preimage ----

Len4Solver::Len4Solver(const BinMatrix& delta0)
    : single_(single_product(classical_complex(delta0))),
      double_(double_product(single_)),
      d0_(single_.map(0)),
      dm1_(single_.map(-1)),
      nm1_(single_.size(-1)),
      n0_(single_.size(0)),
      n1_(single_.size(1)),
      image_solver_(double_.map(0)),
      rb_solver_(BinMatrix::kron(d0_, dm1_.transpose())),
      left_(delta0, Len2Map::minus_one),
      right_(delta0, Len2Map::zero_transpose) {}

std::pair<BinMatrix, BinMatrix> Len4Solver::split(const BinVector& s) const {
  const std::size_t left_size = n0_ * nm1_;
  return {reshape(s.slice(0, left_size), n0_, nm1_), reshape(s.slice(left_size, n1_ * n0_), n1_, n0_)};
}

Len4Result Len4Solver::solve(const BinVector& s, std::optional<std::size_t> t) const {
  const BinMatrix& map = double_.map(0);
  if (s.size() != map.rows()) throw std::invalid_argument("syndrome has the wrong length");
  if (!(double_.map(1) * s).is_zero()) throw std::invalid_argument("syndrome fails the metachecks");
  if (!image_solver_.in_image(s)) throw std::invalid_argument("syndrome is not in the image");

  Len4Result out;
  out.bound_guaranteed = !t || s.weight() < *t;
  auto [S_L, S_R] = split(s);
  BinMatrix M = d0_ * S_L;
  auto rb = rb_solver_.solve(flatten(M));
  if (!rb) throw std::logic_error("no R_b solves d_0 R_b d_m1 = M");
  out.state = make_partial_state(reshape(*rb, n0_, n0_), S_L, S_R, d0_, dm1_);
  partial_decode_Rb(out.state, d0_, dm1_);
  out.R_b = out.state.R_b;
  out.left = left_remainder(out.state, dm1_);
  out.right = right_remainder(out.state, d0_);

  const PowerLaw f = PowerLaw::quadratic();
  try {
    out.R_a = BinMatrix(nm1_, nm1_);
    for (const auto& term : out.left.terms) {
      Len2Result g = left_.solve(term.vec, t);
      out.R_a.set_column(term.index, g.r);
      out.remainder_bound_a += f(term.vec.weight());
    }
    out.R_c = BinMatrix(n1_, n1_);
    for (const auto& term : out.right.terms) {
      Len2Result g = right_.solve(term.vec, t);
      out.R_c.set_row(term.index, g.r);
      out.remainder_bound_c += f(term.vec.weight());
    }
    out.r = BinVector::concat(BinVector::concat(flatten(out.R_a), flatten(out.R_b)), flatten(out.R_c));
  } catch (const std::invalid_argument&) {
    // A remainder column outside the image: only possible when |s| >= t.
    out.constructive = false;
    out.r = *image_solver_.solve(s);
  }
  if (!(map * out.r == s)) throw std::logic_error("length-4 preimage does not reproduce the syndrome");
  return out;
}

Len4Result len4_preimage(const BinMatrix& delta0, const BinVector& s, std::optional<std::size_t> t) {
  return Len4Solver(delta0).solve(s, t);
}

}  // namespace homprod
